#include "qhgeo/hyperbolicity.hpp"

#include <limits>

namespace qhgeo {

std::vector<PointQuadruple> all_quadruples(std::size_t n) {
  std::vector<PointQuadruple> out;
  out.reserve(n * n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) out.push_back({x, y, z, w});
  return out;
}

namespace {

// Interior vertex closest (ambient metric) to each boundary sample.
std::vector<VertexId> boundary_nearest_vertices(const DomainSample& d) {
  const std::size_t samples = d.boundary_sample_count();
  std::vector<VertexId> out;
  out.reserve(samples);
  if (d.embedded() && d.boundary_positions().size() == samples) {
    for (const Point2 b : d.boundary_positions()) {
      if (const auto v = d.nearest_vertex(b)) out.push_back(*v);
    }
    // Lattice lookup only searches a small window; fall back if it missed.
    if (out.size() == samples) return out;
    out.clear();
  }
  std::vector<double> best(samples, std::numeric_limits<double>::infinity());
  std::vector<VertexId> arg(samples, kNoVertex);
  for (std::size_t v = 0; v < d.size(); ++v) {
    for (std::size_t s = 0; s < samples; ++s) {
      const double dist = d.ambient().to_boundary_sample(static_cast<VertexId>(v), s);
      if (dist < best[s]) {
        best[s] = dist;
        arg[s] = static_cast<VertexId>(v);
      }
    }
  }
  for (VertexId v : arg) {
    if (v != kNoVertex) out.push_back(v);
  }
  return out;
}

}  // namespace

StarlikenessReport estimate_rough_starlikeness(const QuasihyperbolicMetric& k, VertexId w) {
  StarlikenessReport report;
  report.base = w;
  const DomainSample& d = k.base();
  std::vector<VertexId> targets = boundary_nearest_vertices(d);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  const auto tree = k.metric().tree(w);
  std::vector<char> on_geodesic(d.size(), 0);
  on_geodesic[w] = 1;
  for (VertexId t : targets) {
    for (VertexId v : tree->path_to(t)) on_geodesic[v] = 1;
  }
  report.geodesics = targets.size();

  std::vector<std::pair<VertexId, double>> seeds;
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (on_geodesic[v]) seeds.emplace_back(static_cast<VertexId>(v), 0.0);
  }
  const std::vector<double> dist = shortest_distances(k.graph(), seeds);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] > report.constant) {
      report.constant = dist[v];
      report.farthest = static_cast<VertexId>(v);
    }
  }
  return report;
}

}  // namespace qhgeo
