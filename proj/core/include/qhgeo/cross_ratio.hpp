#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qhgeo/hyperbolicity.hpp"

namespace qhgeo {

struct CrossRatioReport {
  /// max over tested quadruples of cr1 / cr0 (1 when nothing was tested).
  double slope = 1.0;
  std::size_t tested = 0;
  std::size_t skipped = 0;  // coincident points or denominators below the guard
  std::optional<PointQuadruple> witness;
  /// (cr0, cr1) for the first quadruples tested, for plotting.
  std::vector<std::pair<double, double>> scatter;
};

/// Cross-ratio distortion between two distance functions on the same index
/// set. cr(x,y,z,w) = d(x,z) d(y,w) / (d(x,y) d(z,w)). A quadruple is skipped
/// when any of its points coincide or a denominator distance falls below the
/// corresponding guard in either space.
template <class D0, class D1>
CrossRatioReport cross_ratio_distortion(D0&& d0, D1&& d1,
                                        std::span<const PointQuadruple> quadruples,
                                        double guard0, double guard1,
                                        std::size_t scatter_cap = 0) {
  CrossRatioReport report;
  double best = 0.0;
  for (const PointQuadruple& q : quadruples) {
    const auto [x, y, z, w] = q;
    if (x == y || x == z || x == w || y == z || y == w || z == w) {
      ++report.skipped;
      continue;
    }
    const double a0 = d0(x, y);
    const double b0 = d0(z, w);
    const double a1 = d1(x, y);
    const double b1 = d1(z, w);
    if (a0 < guard0 || b0 < guard0 || a1 < guard1 || b1 < guard1) {
      ++report.skipped;
      continue;
    }
    const double cr0 = d0(x, z) * d0(y, w) / (a0 * b0);
    const double cr1 = d1(x, z) * d1(y, w) / (a1 * b1);
    if (!(cr0 > 0.0)) {
      ++report.skipped;
      continue;
    }
    ++report.tested;
    const double ratio = cr1 / cr0;
    if (ratio > best) {
      best = ratio;
      report.witness = q;
    }
    if (report.scatter.size() < scatter_cap) report.scatter.emplace_back(cr0, cr1);
  }
  if (report.tested > 0) report.slope = best;
  return report;
}

}  // namespace qhgeo
