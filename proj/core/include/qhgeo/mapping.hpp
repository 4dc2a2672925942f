#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qhgeo/quasihyperbolic.hpp"

namespace qhgeo {

using Complex = std::complex<double>;

/// Closed-form homeomorphism between planar domains with its inverse.
class PlanarMap {
 public:
  virtual ~PlanarMap() = default;
  virtual Point2 forward(Point2 p) const = 0;
  virtual Point2 inverse(Point2 p) const = 0;
  virtual std::string name() const = 0;
};

std::shared_ptr<const PlanarMap> identity_map();
/// z -> s e^{i theta} z + t.
std::shared_ptr<const PlanarMap> similarity_map(double scale, double rotation = 0.0,
                                                Point2 translation = {});
/// z -> (z - a) / (1 - conj(a) z), |a| < 1.
std::shared_ptr<const PlanarMap> disk_automorphism(Complex a);
/// z -> z^alpha with arg taken in [0, 2 pi), alpha > 0.
std::shared_ptr<const PlanarMap> power_map(double alpha);
/// Upper half-plane to unit disk: z -> (z - i) / (z + i).
std::shared_ptr<const PlanarMap> cayley_map();
/// Unit disk to upper half-plane: w -> i (1 + w) / (1 - w).
std::shared_ptr<const PlanarMap> inverse_cayley_map();
/// z -> (a z + b) / (c z + d), ad - bc != 0.
std::shared_ptr<const PlanarMap> mobius_map(Complex a, Complex b, Complex c, Complex d);
/// Swaps forward and inverse.
std::shared_ptr<const PlanarMap> inverse_of(std::shared_ptr<const PlanarMap> map);
/// `second` after `first`.
std::shared_ptr<const PlanarMap> compose(std::shared_ptr<const PlanarMap> first,
                                         std::shared_ptr<const PlanarMap> second);

/// Sampled homeomorphism between two domains. Built-in maps are evaluated
/// analytically and snapped to the nearest target vertex; a source vertex is
/// mappable when its image lies in the target's vertex region (inside the
/// shape, within truncation and outside the exclusion band).
class MappingPair {
 public:
  /// Throws ConfigError if either domain lacks an analytic shape.
  static MappingPair from_planar_map(std::shared_ptr<const QuasihyperbolicMetric> source,
                                     std::shared_ptr<const QuasihyperbolicMetric> target,
                                     std::shared_ptr<const PlanarMap> map);
  /// Vertex i maps to vertex i (same underlying point set, two metrics).
  static MappingPair vertex_identity(std::shared_ptr<const QuasihyperbolicMetric> source,
                                     std::shared_ptr<const QuasihyperbolicMetric> target);

  /// Explicit vertex correspondence; kNoVertex marks an unmapped vertex.
  /// Used to carry a mapping over to deformed copies of its domains.
  static MappingPair from_tables(std::shared_ptr<const QuasihyperbolicMetric> source,
                                 std::shared_ptr<const QuasihyperbolicMetric> target,
                                 std::vector<VertexId> forward, std::vector<VertexId> inverse);

  MappingPair inverted() const;

  const QuasihyperbolicMetric& source_qh() const { return *source_; }
  const QuasihyperbolicMetric& target_qh() const { return *target_; }
  const DomainSample& source() const { return source_->base(); }
  const DomainSample& target() const { return target_->base(); }

  /// Estimators evaluate the closed form off-grid when true.
  bool analytic() const { return map_ != nullptr; }
  const PlanarMap* map() const { return map_.get(); }

  /// Snapped image vertex, or kNoVertex when not mappable.
  VertexId forward(VertexId v) const { return forward_[v]; }
  VertexId inverse(VertexId v) const { return inverse_[v]; }
  /// Source vertices with an image, ascending.
  const std::vector<VertexId>& mappable() const { return mappable_; }
  const std::vector<VertexId>& forward_table() const { return forward_; }
  const std::vector<VertexId>& inverse_table() const { return inverse_; }

  /// max |f^-1(f(x)) - x| over mappable vertices of both sides.
  double round_trip_error() const { return round_trip_error_; }
  /// max distance between an analytic image and its snapped vertex.
  double snap_error() const { return snap_error_; }
  /// max image distance of the endpoints of a source edge.
  double continuity_modulus() const { return continuity_modulus_; }

 private:
  MappingPair() = default;

  std::shared_ptr<const QuasihyperbolicMetric> source_;
  std::shared_ptr<const QuasihyperbolicMetric> target_;
  std::shared_ptr<const PlanarMap> map_;
  std::vector<VertexId> forward_;
  std::vector<VertexId> inverse_;
  std::vector<VertexId> mappable_;
  std::vector<VertexId> inverse_mappable_;
  double round_trip_error_ = 0.0;
  double snap_error_ = 0.0;
  double continuity_modulus_ = 0.0;
};

}  // namespace qhgeo
