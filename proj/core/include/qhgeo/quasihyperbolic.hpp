#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qhgeo/domain.hpp"

namespace qhgeo {

/// Quasihyperbolic length of an edge: trapezoid rule for the density 1/d_G.
inline double qh_edge_weight(double length, double du, double dv) {
  return length * (1.0 / du + 1.0 / dv) / 2.0;
}

/// Quasihyperbolic metric k_G of a domain: shortest paths in the domain's
/// length graph with edges reweighted by the density 1/d_G.
class QuasihyperbolicMetric {
 public:
  explicit QuasihyperbolicMetric(std::shared_ptr<const DomainSample> base);

  const DomainSample& base() const { return *base_; }
  const std::shared_ptr<const DomainSample>& shared_base() const { return base_; }
  const GraphMetric& metric() const { return metric_; }
  const LengthGraph& graph() const { return metric_.graph(); }

  double distance(VertexId x, VertexId y) const { return metric_.distance(x, y); }
  /// Vertex path realizing distance(x, y); lowest-index predecessor on ties.
  std::vector<VertexId> geodesic(VertexId x, VertexId y) const { return metric_.path(x, y); }

 private:
  std::shared_ptr<const DomainSample> base_;
  GraphMetric metric_;
};

std::shared_ptr<const QuasihyperbolicMetric> make_qh_metric(
    std::shared_ptr<const DomainSample> base);

/// Which inequality of the distance-bound check failed.
enum class DistanceBound {
  kExponential,  // d(x,y) <= (e^k - 1) d_G(x)
  kLocalLower,   // d(x,y) / (2 d_G(x)) <= k
  kLocalUpper,   // k <= 3c d(x,y) / d_G(x)
};

struct DistanceBoundViolation {
  VertexPair pair;
  DistanceBound bound;
  double lhs = 0.0;
  double rhs = 0.0;  // slack already applied
};

struct DistanceBoundReport {
  std::size_t pairs_checked = 0;
  std::size_t local_pairs = 0;  // pairs where the two local bounds apply
  std::vector<DistanceBoundViolation> violations;
  /// Tightest observed value of lhs / rhs (before slack) per inequality.
  double worst_exponential = 0.0;
  double worst_local_lower = 0.0;
  double worst_local_upper = 0.0;
};

/// Checks on every pair: d(x,y) <= (e^{k(x,y)} - 1) d_G(x); and, whenever
/// d(x,y) <= d_G(x)/(3c) or k(x,y) <= 1, also
/// d(x,y)/(2 d_G(x)) <= k(x,y) <= 3c d(x,y)/d_G(x). Every right-hand side is
/// multiplied by `slack`.
DistanceBoundReport verify_distance_bounds(const QuasihyperbolicMetric& k,
                                           std::span<const VertexPair> pairs,
                                           double slack = 1.05);

struct UniformityEntry {
  VertexPair pair;
  double length_ratio = 0.0;  // l(gamma) / d(x,y)
  double cigar_ratio = 0.0;   // max_z min{l(gamma[x,z]), l(gamma[z,y])} / d_G(z)
};

struct UniformityReport {
  double constant = 1.0;  // A
  std::optional<VertexPair> worst_pair;
  std::vector<UniformityEntry> entries;
  std::size_t skipped = 0;  // coincident pairs
};

/// Uniformity constant A along the quasihyperbolic geodesics of the pairs.
/// Curve length is measured in the domain's length graph.
UniformityReport estimate_uniformity(const QuasihyperbolicMetric& k,
                                     std::span<const VertexPair> pairs);

}  // namespace qhgeo
