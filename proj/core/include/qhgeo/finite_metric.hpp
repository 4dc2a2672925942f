#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qhgeo/length_graph.hpp"

namespace qhgeo {

/// Dense distance table over a pool of points. Entry (i, j) is the distance
/// between pool[i] and pool[j] in whatever metric filled it.
class FiniteMetric {
 public:
  FiniteMetric() = default;

  /// `fill(a, b)` is called for every ordered pair of pool members.
  template <class DistanceFn>
  static FiniteMetric tabulate(std::vector<VertexId> pool, DistanceFn&& fill) {
    FiniteMetric m;
    const std::size_t n = pool.size();
    m.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.table_[i * n + j] = i == j ? 0.0 : fill(pool[i], pool[j]);
    }
    m.pool_ = std::move(pool);
    return m;
  }

  /// Same, but row-at-a-time: `row(a)` returns distances from a to every
  /// vertex id (so pool members index into it).
  template <class RowFn>
  static FiniteMetric from_rows(std::vector<VertexId> pool, RowFn&& row) {
    FiniteMetric m;
    const std::size_t n = pool.size();
    m.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = row(pool[i]);
      for (std::size_t j = 0; j < n; ++j) m.table_[i * n + j] = i == j ? 0.0 : r[pool[j]];
    }
    m.pool_ = std::move(pool);
    return m;
  }

  std::size_t size() const { return pool_.size(); }
  const std::vector<VertexId>& pool() const { return pool_; }
  double operator()(std::size_t i, std::size_t j) const { return table_[i * pool_.size() + j]; }

 private:
  std::vector<VertexId> pool_;
  std::vector<double> table_;
};

struct MetricAxiomReport {
  bool ok = true;
  std::size_t triples_checked = 0;
  /// Largest relative excess seen for each axiom.
  double worst_identity = 0.0;
  double worst_symmetry = 0.0;
  double worst_triangle = 0.0;
  std::optional<std::array<std::size_t, 3>> witness;
};

/// Checks d(x,x) = 0, d(x,y) = d(y,x) > 0 for x != y and
/// d(x,z) <= d(x,y) + d(y,z) on each triple, with tolerance relative to the
/// largest distance involved (floor 1).
template <class Distance>
MetricAxiomReport check_metric_axioms(Distance&& d,
                                      std::span<const std::array<std::size_t, 3>> triples,
                                      double tolerance = 1e-12) {
  MetricAxiomReport report;
  auto fail = [&](const std::array<std::size_t, 3>& t) {
    if (report.ok) report.witness = t;
    report.ok = false;
  };
  for (const auto& t : triples) {
    const auto [x, y, z] = t;
    ++report.triples_checked;
    const double dxy = d(x, y);
    const double dyx = d(y, x);
    const double dyz = d(y, z);
    const double dxz = d(x, z);
    const double scale = std::max({1.0, dxy, dyz, dxz});
    const double self = std::abs(d(x, x)) / scale;
    report.worst_identity = std::max(report.worst_identity, self);
    if (self > tolerance) fail(t);
    if (x != y && !(dxy > 0.0)) {
      report.worst_identity = std::max(report.worst_identity, 1.0);
      fail(t);
    }
    const double asym = std::abs(dxy - dyx) / scale;
    report.worst_symmetry = std::max(report.worst_symmetry, asym);
    if (asym > tolerance) fail(t);
    const double excess = (dxz - dxy - dyz) / scale;
    report.worst_triangle = std::max(report.worst_triangle, excess);
    if (excess > tolerance) fail(t);
  }
  return report;
}

}  // namespace qhgeo
