#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qhgeo/cross_ratio.hpp"
#include "qhgeo/domain.hpp"
#include "qhgeo/quasihyperbolic.hpp"

namespace qhgeo {

namespace detail {
class SphericalChain;
}

/// rho_{w,eps}(x) = exp(-eps k(x, w)).
double bhk_density(const QuasihyperbolicMetric& k, VertexId x, VertexId w, double epsilon);

struct DiameterEstimate {
  double estimate = 0.0;  // attained by `witness`, so a lower bound
  double upper = 0.0;     // 2 ecc(w), an upper bound
  VertexPair witness{kNoVertex, kNoVertex};
};

/// Conformal deformation of (G, k) by the density rho_{w,eps}: shortest
/// paths in the quasihyperbolic graph with each edge weight multiplied by the
/// trapezoid average of rho at its endpoints.
class BhkSpace {
 public:
  /// Throws ConfigError unless 0 < epsilon < 1 and w is a vertex.
  BhkSpace(std::shared_ptr<const QuasihyperbolicMetric> k, VertexId w, double epsilon);

  const QuasihyperbolicMetric& qh() const { return *k_; }
  VertexId base_point() const { return w_; }
  double epsilon() const { return epsilon_; }

  double density(VertexId v) const { return density_[v]; }
  const GraphMetric& metric() const { return *metric_; }
  double distance(VertexId a, VertexId b) const { return metric_->distance(a, b); }

  /// Distance to the metric boundary of the deformed space. Every vertex v
  /// offers an exit of cost rho(v)/eps, the deformed length of a
  /// quasihyperbolic ray leaving v along which k(., w) grows at unit rate.
  double boundary_distance(VertexId v) const { return boundary_distance_[v]; }

  /// Sweeps from the vertices farthest from w.
  DiameterEstimate diameter(std::size_t sweeps = 8) const;

  /// The deformed space as a domain sample (same vertices and positions).
  std::shared_ptr<const DomainSample> as_domain() const { return domain_; }

 private:
  std::shared_ptr<const QuasihyperbolicMetric> k_;
  VertexId w_;
  double epsilon_;
  std::vector<double> density_;
  std::shared_ptr<const GraphMetric> metric_;
  std::vector<double> boundary_distance_;
  std::shared_ptr<const DomainSample> domain_;
};

struct ComparabilityReport {
  double constant = 1.0;  // C = max(max ratio, max 1/ratio)
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  std::size_t pairs_used = 0;
  std::size_t skipped = 0;
  std::optional<VertexPair> witness;
};

/// Ratio eps^-1 exp(-eps (x|y)_w) min{1, eps k(x,y)} / d_{w,eps}(x,y) over the
/// pairs, with the Gromov product taken in k.
ComparabilityReport verify_gromov_comparability(const BhkSpace& space,
                                                std::span<const VertexPair> pairs);

/// Cross-ratio distortion of the identity between two deformations of the
/// same base with different base points, on quadruples of pool indices.
CrossRatioReport basepoint_change_distortion(const BhkSpace& from, const BhkSpace& to,
                                             std::span<const VertexId> pool,
                                             std::span<const PointQuadruple> quadruples);

/// Sphericalization of a domain at boundary sample p: chain metric of the
/// quasimetric s(x,y) = d(x,y) / ((1 + d(x,p)) (1 + d(y,p))) over all
/// vertices, plus the point at infinity (s(x, inf) = 1/(1 + d(x,p))) when the
/// base is unbounded.
class SphericalSpace {
 public:
  /// Throws ConfigError if p is not a boundary sample index.
  SphericalSpace(std::shared_ptr<const DomainSample> base, std::size_t p);

  const DomainSample& base() const;
  std::size_t pole() const;
  bool has_infinity() const;

  /// The quasimetric s on vertices.
  double quasimetric(VertexId a, VertexId b) const;
  double to_infinity(VertexId a) const;

  /// Chain metric; rows are computed by dense Dijkstra and cached.
  double distance(VertexId a, VertexId b) const { return (*row(a))[b]; }
  std::shared_ptr<const std::vector<double>> row(VertexId a) const;

  double boundary_distance(VertexId v) const { return boundary_distance_[v]; }

  /// Domain sample whose graph edges carry s-lengths and whose ambient
  /// metric is the chain metric.
  std::shared_ptr<const DomainSample> as_domain() const { return domain_; }

 private:
  std::shared_ptr<const detail::SphericalChain> chain_;
  std::vector<double> boundary_distance_;
  std::shared_ptr<const DomainSample> domain_;
};

/// Boundary sample of `domain` nearest to `point` (embedded domains).
std::size_t nearest_boundary_sample(const DomainSample& domain, Point2 point);

}  // namespace qhgeo
