#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qhgeo/quasihyperbolic.hpp"

namespace qhgeo {

/// (x|y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2 for any distance callable d.
template <class Distance, class P>
double gromov_product(Distance&& d, P x, P y, P w) {
  return 0.5 * (d(x, w) + d(y, w) - d(x, y));
}

/// |S(o) - S(w)| with S(b) = (x|y)_b + (z|u)_b - (x|z)_b - (y|u)_b. The
/// combination does not depend on the base point, so this is pure rounding.
template <class Distance, class P>
double basepoint_identity_residual(Distance&& d, P x, P y, P z, P u, P o, P w) {
  auto combo = [&](P b) {
    return gromov_product(d, x, y, b) + gromov_product(d, z, u, b) - gromov_product(d, x, z, b) -
           gromov_product(d, y, u, b);
  };
  return std::abs(combo(o) - combo(w));
}

/// Quadruple (x, y, z, w): w is the base point of the four-point condition.
using PointQuadruple = std::array<std::size_t, 4>;

struct HyperbolicityReport {
  double delta = 0.0;
  std::size_t quadruples_tested = 0;
  std::optional<PointQuadruple> witness;
};

/// delta = max over quadruples of min{(x|z)_w, (z|y)_w} - (x|y)_w, clamped
/// at 0. A lower bound on the true delta of the space.
template <class Distance>
HyperbolicityReport estimate_delta(Distance&& d, std::span<const PointQuadruple> quadruples) {
  HyperbolicityReport report;
  for (const PointQuadruple& q : quadruples) {
    const auto [x, y, z, w] = q;
    ++report.quadruples_tested;
    const double defect = std::min(gromov_product(d, x, z, w), gromov_product(d, z, y, w)) -
                          gromov_product(d, x, y, w);
    if (defect > report.delta) {
      report.delta = defect;
      report.witness = q;
    }
  }
  return report;
}

/// Every ordered quadruple of {0, ..., n-1}; intended for n <= 60.
std::vector<PointQuadruple> all_quadruples(std::size_t n);

struct StarlikenessReport {
  double constant = 0.0;  // K
  VertexId base = kNoVertex;
  std::size_t geodesics = 0;
  std::optional<VertexId> farthest;  // vertex attaining K
};

/// Rough starlikeness of (G, k) about w: geodesics run from w to the interior
/// vertex nearest each boundary sample; K is the largest k-distance from any
/// vertex to the union of their vertex sets.
StarlikenessReport estimate_rough_starlikeness(const QuasihyperbolicMetric& k, VertexId w);

}  // namespace qhgeo
