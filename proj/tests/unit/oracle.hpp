#pragma once

// Reference computations for the unit tests. Nothing here calls into the
// library's graph or metric code.

#include <cmath>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "qhgeo/geometry.hpp"
#include "qhgeo/length_graph.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^2) Dijkstra over a dense adjacency matrix.
inline std::vector<double> dense_dijkstra(const std::vector<std::vector<double>>& w,
                                          std::size_t source) {
  const std::size_t n = w.size();
  std::vector<double> dist(n, kInf);
  std::vector<bool> done(n, false);
  dist[source] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n || dist[u] == kInf) break;
    done[u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (w[u][v] < kInf && dist[u] + w[u][v] < dist[v]) dist[v] = dist[u] + w[u][v];
    }
  }
  return dist;
}

inline std::vector<std::vector<double>> adjacency(std::size_t n,
                                                  const std::vector<qhgeo::Edge>& edges) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, kInf));
  for (const auto& e : edges) {
    w[e.u][e.v] = std::min(w[e.u][e.v], e.length);
    w[e.v][e.u] = std::min(w[e.v][e.u], e.length);
  }
  return w;
}

// Poincare-disk hyperbolic distance (curvature -1, density 2/(1-|z|^2)).
inline double hyperbolic_disk(qhgeo::Point2 a, qhgeo::Point2 b) {
  const std::complex<double> z(a.x, a.y);
  const std::complex<double> w(b.x, b.y);
  const double r = std::abs((z - w) / (1.0 - std::conj(w) * z));
  return 2.0 * std::atanh(std::min(r, 1.0 - 1e-16));
}

// Quasihyperbolic distance between two points on one radius of the unit disk.
inline double disk_radial_qh(double r1, double r2) {
  return std::abs(std::log((1.0 - r1) / (1.0 - r2)));
}

// d_G of the unit-width L-shape (0,2)x(0,1) u (0,1)x(0,2) at an interior
// point: distance to the nearest of its six edges.
inline double l_shape_boundary_distance(qhgeo::Point2 p) {
  const qhgeo::Point2 c[6] = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  double best = kInf;
  for (int i = 0; i < 6; ++i) best = std::min(best, qhgeo::segment_distance(p, c[i], c[(i + 1) % 6]));
  return best;
}

}  // namespace oracle
