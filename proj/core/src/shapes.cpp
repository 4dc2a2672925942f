#include "qhgeo/shapes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qhgeo/error.hpp"

namespace qhgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t segments_for(double length, double spacing) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / spacing)));
}

void sample_segment(Point2 a, Point2 b, double spacing, std::vector<Point2>& out) {
  const std::size_t n = segments_for(distance(a, b), spacing);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    out.push_back(a + t * (b - a));
  }
}

void sample_arc(double radius, double from, double to, double spacing, bool closed,
                std::vector<Point2>& out) {
  const std::size_t n = segments_for(radius * (to - from), spacing);
  const std::size_t count = closed ? n : n + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = from + (to - from) * static_cast<double>(i) / static_cast<double>(n);
    out.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
}

double polygon_diameter(const std::vector<Point2>& vertices) {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      best = std::max(best, distance(vertices[i], vertices[j]));
    }
  }
  return best;
}

bool point_in_polygon(Point2 p, const std::vector<Point2>& poly) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2 a = poly[i];
    const Point2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_edge_distance(Point2 p, const std::vector<Point2>& poly) {
  double best = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

Box polygon_box(const std::vector<Point2>& poly) {
  Box box{poly.front(), poly.front()};
  for (const Point2& v : poly) {
    box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y)};
    box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y)};
  }
  return box;
}

class Disk final : public Shape {
 public:
  explicit Disk(double r) : r_(r) {}
  bool contains(Point2 p) const override { return norm(p) < r_; }
  double boundary_distance(Point2 p) const override { return r_ - norm(p); }
  std::vector<Point2> boundary_samples(double spacing) const override {
    std::vector<Point2> out;
    sample_arc(r_, 0.0, 2.0 * kPi, spacing, true, out);
    return out;
  }
  Box vertex_box() const override { return {{-r_, -r_}, {r_, r_}}; }
  double diameter() const override { return 2.0 * r_; }

 private:
  double r_;
};

class Annulus final : public Shape {
 public:
  Annulus(double inner, double outer) : inner_(inner), outer_(outer) {}
  bool contains(Point2 p) const override {
    const double r = norm(p);
    return r > inner_ && r < outer_;
  }
  double boundary_distance(Point2 p) const override {
    const double r = norm(p);
    return std::min(r - inner_, outer_ - r);
  }
  std::vector<Point2> boundary_samples(double spacing) const override {
    std::vector<Point2> out;
    sample_arc(inner_, 0.0, 2.0 * kPi, spacing, true, out);
    sample_arc(outer_, 0.0, 2.0 * kPi, spacing, true, out);
    return out;
  }
  Box vertex_box() const override { return {{-outer_, -outer_}, {outer_, outer_}}; }
  double diameter() const override { return 2.0 * outer_; }

 private:
  double inner_;
  double outer_;
};

// Simple polygon whose boundary distance is exact (segment distances).
class ExactPolygon : public Shape {
 public:
  explicit ExactPolygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}
  bool contains(Point2 p) const override { return point_in_polygon(p, vertices_); }
  double boundary_distance(Point2 p) const override {
    return polygon_edge_distance(p, vertices_);
  }
  std::vector<Point2> boundary_samples(double spacing) const override {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      sample_segment(vertices_[i], vertices_[(i + 1) % vertices_.size()], spacing, out);
    }
    return out;
  }
  Box vertex_box() const override { return polygon_box(vertices_); }
  double diameter() const override { return polygon_diameter(vertices_); }

 protected:
  std::vector<Point2> vertices_;
};

class Square final : public ExactPolygon {
 public:
  explicit Square(double s) : ExactPolygon({{0, 0}, {s, 0}, {s, s}, {0, s}}), s_(s) {}
  bool contains(Point2 p) const override {
    return p.x > 0.0 && p.x < s_ && p.y > 0.0 && p.y < s_;
  }
  double boundary_distance(Point2 p) const override {
    return std::min({p.x, s_ - p.x, p.y, s_ - p.y});
  }

 private:
  double s_;
};

class LShape final : public ExactPolygon {
 public:
  LShape(double width, double length)
      : ExactPolygon({{0, 0}, {length, 0}, {length, width}, {width, width}, {width, length},
                      {0, length}}),
        w_(width),
        l_(length) {}
  bool contains(Point2 p) const override {
    return (p.x > 0.0 && p.x < l_ && p.y > 0.0 && p.y < w_) ||
           (p.x > 0.0 && p.x < w_ && p.y > 0.0 && p.y < l_);
  }

 private:
  double w_;
  double l_;
};

// Boundary distance is taken from boundary samples rather than segments.
class SampledPolygon final : public ExactPolygon {
 public:
  SampledPolygon(std::vector<Point2> vertices, double spacing)
      : ExactPolygon(std::move(vertices)) {
    samples_ = ExactPolygon::boundary_samples(spacing);
  }
  double boundary_distance(Point2 p) const override {
    double best = kInf;
    for (const Point2& b : samples_) best = std::min(best, distance(p, b));
    return best;
  }

 private:
  std::vector<Point2> samples_;
};

class HalfPlane final : public Shape {
 public:
  explicit HalfPlane(double truncation) : r_(truncation) {}
  bool contains(Point2 p) const override { return p.y > 0.0; }
  double boundary_distance(Point2 p) const override { return p.y; }
  std::vector<Point2> boundary_samples(double spacing) const override {
    std::vector<Point2> out;
    sample_segment({-r_, 0.0}, {r_, 0.0}, spacing, out);
    out.push_back({r_, 0.0});
    return out;
  }
  Box vertex_box() const override { return {{-r_, 0.0}, {r_, r_}}; }
  bool within_truncation(Point2 p) const override { return norm(p) < r_; }
  bool bounded() const override { return false; }
  double diameter() const override { return kInf; }

 private:
  double r_;
};

class PuncturedPlane final : public Shape {
 public:
  explicit PuncturedPlane(double truncation) : r_(truncation) {}
  bool contains(Point2 p) const override { return p.x != 0.0 || p.y != 0.0; }
  double boundary_distance(Point2 p) const override { return norm(p); }
  std::vector<Point2> boundary_samples(double) const override { return {{0.0, 0.0}}; }
  Box vertex_box() const override { return {{-r_, -r_}, {r_, r_}}; }
  bool within_truncation(Point2 p) const override { return norm(p) < r_; }
  bool bounded() const override { return false; }
  double diameter() const override { return kInf; }

 private:
  double r_;
};

class Sector final : public Shape {
 public:
  Sector(double radius, double angle)
      : r_(radius), angle_(angle), ray_end_{radius * std::cos(angle), radius * std::sin(angle)} {}
  bool contains(Point2 p) const override {
    if (!(norm(p) < r_) || (p.x == 0.0 && p.y == 0.0)) return false;
    const double a = argument(p);
    return a > 0.0 && a < angle_;
  }
  double boundary_distance(Point2 p) const override {
    return std::min({segment_distance(p, {0, 0}, {r_, 0}), segment_distance(p, {0, 0}, ray_end_),
                     r_ - norm(p)});
  }
  std::vector<Point2> boundary_samples(double spacing) const override {
    std::vector<Point2> out;
    sample_segment({0, 0}, {r_, 0}, spacing, out);
    sample_arc(r_, 0.0, angle_, spacing, angle_ >= 2.0 * kPi, out);
    if (angle_ < 2.0 * kPi) {
      std::vector<Point2> ray;
      sample_segment({0, 0}, ray_end_, spacing, ray);
      out.insert(out.end(), ray.begin() + 1, ray.end());
    }
    return out;
  }
  Box vertex_box() const override { return {{-r_, -r_}, {r_, r_}}; }
  double diameter() const override {
    return std::max(r_, 2.0 * r_ * std::sin(std::min(angle_, kPi) / 2.0));
  }

 private:
  static double argument(Point2 p) {
    const double a = std::atan2(p.y, p.x);
    return a < 0.0 ? a + 2.0 * kPi : a;
  }
  double r_;
  double angle_;
  Point2 ray_end_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kDisk: return "disk";
    case ShapeKind::kAnnulus: return "annulus";
    case ShapeKind::kSquare: return "square";
    case ShapeKind::kLShape: return "l_shape";
    case ShapeKind::kHalfPlane: return "half_plane";
    case ShapeKind::kPuncturedPlane: return "punctured_plane";
    case ShapeKind::kSector: return "sector";
    case ShapeKind::kPolygon: return "polygon";
  }
  return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
  static constexpr std::array kinds{ShapeKind::kDisk,      ShapeKind::kAnnulus,
                                    ShapeKind::kSquare,    ShapeKind::kLShape,
                                    ShapeKind::kHalfPlane, ShapeKind::kPuncturedPlane,
                                    ShapeKind::kSector,    ShapeKind::kPolygon};
  for (ShapeKind k : kinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

ShapeSpec ShapeSpec::scaled(double s) const {
  ShapeSpec out = *this;
  out.radius *= s;
  out.inner_radius *= s;
  out.side *= s;
  out.arm_width *= s;
  out.arm_length *= s;
  out.truncation_radius *= s;
  out.resolution *= s;
  for (Point2& p : out.polygon) p = s * p;
  return out;
}

std::unique_ptr<Shape> make_shape(const ShapeSpec& spec) {
  require(positive_finite(spec.resolution), "resolution must be positive");
  require(spec.exclusion_band >= 0.0 && std::isfinite(spec.exclusion_band),
          "exclusion_band must be non-negative");
  switch (spec.kind) {
    case ShapeKind::kDisk:
      require(positive_finite(spec.radius), "disk radius must be positive");
      return std::make_unique<Disk>(spec.radius);
    case ShapeKind::kAnnulus:
      require(positive_finite(spec.inner_radius), "annulus inner_radius must be positive");
      require(positive_finite(spec.radius) && spec.radius > spec.inner_radius,
              "annulus radius must exceed inner_radius");
      return std::make_unique<Annulus>(spec.inner_radius, spec.radius);
    case ShapeKind::kSquare:
      require(positive_finite(spec.side), "square side must be positive");
      return std::make_unique<Square>(spec.side);
    case ShapeKind::kLShape:
      require(positive_finite(spec.arm_width), "l_shape arm_width must be positive");
      require(positive_finite(spec.arm_length) && spec.arm_length > spec.arm_width,
              "l_shape arm_length must exceed arm_width");
      return std::make_unique<LShape>(spec.arm_width, spec.arm_length);
    case ShapeKind::kHalfPlane:
    case ShapeKind::kPuncturedPlane: {
      const double feature = std::max(1.0, spec.resolution * std::max(1.0, spec.exclusion_band));
      require(positive_finite(spec.truncation_radius) && spec.truncation_radius > 2.0 * feature,
              "truncation_radius must exceed twice the largest feature scale");
      if (spec.kind == ShapeKind::kHalfPlane) {
        return std::make_unique<HalfPlane>(spec.truncation_radius);
      }
      return std::make_unique<PuncturedPlane>(spec.truncation_radius);
    }
    case ShapeKind::kSector:
      require(positive_finite(spec.radius), "sector radius must be positive");
      require(spec.angle > 0.0 && spec.angle <= 2.0 * kPi, "sector angle must lie in (0, 2 pi]");
      return std::make_unique<Sector>(spec.radius, spec.angle);
    case ShapeKind::kPolygon:
      require(spec.polygon.size() >= 3, "polygon needs at least 3 vertices");
      for (const Point2& p : spec.polygon) {
        require(std::isfinite(p.x) && std::isfinite(p.y), "polygon vertex must be finite");
      }
      return std::make_unique<SampledPolygon>(spec.polygon, spec.resolution);
  }
  throw ConfigError("unknown shape kind");
}

}  // namespace qhgeo
