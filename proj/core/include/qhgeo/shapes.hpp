#pragma once

#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhgeo/geometry.hpp"

namespace qhgeo {

enum class ShapeKind {
  kDisk,
  kAnnulus,
  kSquare,
  kLShape,
  kHalfPlane,
  kPuncturedPlane,
  kSector,
  kPolygon,
};

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);

/// Planar domain description. Only the fields relevant to `kind` are read.
///
///   disk            {|z| < radius}
///   annulus         {inner_radius < |z| < radius}
///   square          (0, side)^2
///   l_shape         (0, arm_length) x (0, arm_width) union (0, arm_width) x (0, arm_length)
///   half_plane      {y > 0}, vertices kept in |z| < truncation_radius
///   punctured_plane R^2 \ {0}, vertices kept in |z| < truncation_radius
///   sector          {|z| < radius, 0 < arg z < angle}, angle in (0, 2 pi]
///   polygon         simple polygon, counter-clockwise or clockwise
struct ShapeSpec {
  ShapeKind kind = ShapeKind::kDisk;
  double radius = 1.0;
  double inner_radius = 0.0;
  double side = 1.0;
  double arm_width = 1.0;
  double arm_length = 2.0;
  double truncation_radius = 4.0;
  double angle = std::numbers::pi;
  std::vector<Point2> polygon;

  /// Grid spacing h.
  double resolution = 0.02;
  /// Lattice points with boundary distance < exclusion_band * h are dropped.
  double exclusion_band = 2.0;

  /// Copy with every length multiplied by s (resolution included).
  ShapeSpec scaled(double s) const;
};

/// Analytic description of an open planar domain G with its boundary.
class Shape {
 public:
  virtual ~Shape() = default;

  virtual bool contains(Point2 p) const = 0;
  /// d_G(p), exact for the built-in kinds.
  virtual double boundary_distance(Point2 p) const = 0;
  virtual std::vector<Point2> boundary_samples(double spacing) const = 0;
  /// Region in which lattice vertices are generated.
  virtual Box vertex_box() const = 0;
  /// Truncation test for unbounded kinds; always true for bounded ones.
  virtual bool within_truncation(Point2) const { return true; }
  virtual bool bounded() const { return true; }
  /// Euclidean diameter of G (infinite when unbounded).
  virtual double diameter() const = 0;
};

/// Validates the spec and builds the analytic shape. Throws ConfigError.
std::unique_ptr<Shape> make_shape(const ShapeSpec& spec);

}  // namespace qhgeo
