#include "qhgeo/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qhgeo/error.hpp"

namespace qhgeo {

namespace {

Complex to_complex(Point2 p) { return {p.x, p.y}; }
Point2 to_point(Complex z) { return {z.real(), z.imag()}; }

class FunctionMap final : public PlanarMap {
 public:
  using Fn = std::function<Point2(Point2)>;
  FunctionMap(std::string name, Fn forward, Fn inverse)
      : name_(std::move(name)), forward_(std::move(forward)), inverse_(std::move(inverse)) {}
  Point2 forward(Point2 p) const override { return forward_(p); }
  Point2 inverse(Point2 p) const override { return inverse_(p); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Fn forward_;
  Fn inverse_;
};

class InverseMap final : public PlanarMap {
 public:
  explicit InverseMap(std::shared_ptr<const PlanarMap> map) : map_(std::move(map)) {}
  Point2 forward(Point2 p) const override { return map_->inverse(p); }
  Point2 inverse(Point2 p) const override { return map_->forward(p); }
  std::string name() const override { return "inverse(" + map_->name() + ")"; }

 private:
  std::shared_ptr<const PlanarMap> map_;
};

Point2 polar_power(Point2 p, double alpha) {
  const double r = norm(p);
  if (r == 0.0) return {};
  double theta = std::atan2(p.y, p.x);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  const double radius = std::pow(r, alpha);
  return {radius * std::cos(alpha * theta), radius * std::sin(alpha * theta)};
}

Complex mobius(Complex a, Complex b, Complex c, Complex d, Complex z) {
  return (a * z + b) / (c * z + d);
}

// Whether p would be a vertex position of the domain (up to snapping).
bool in_vertex_region(const DomainSample& d, Point2 p) {
  const Shape* shape = d.shape();
  if (!shape->contains(p) || !shape->within_truncation(p)) return false;
  const double band = d.spec()->exclusion_band * d.resolution();
  return shape->boundary_distance(p) >= band;
}

struct Snapped {
  std::vector<VertexId> table;
  std::vector<VertexId> mappable;
  double snap_error = 0.0;
};

Snapped snap_images(const DomainSample& from, const DomainSample& to,
                    const std::function<Point2(Point2)>& f) {
  Snapped out;
  out.table.assign(from.size(), kNoVertex);
  for (std::size_t v = 0; v < from.size(); ++v) {
    const Point2 image = f(from.position(static_cast<VertexId>(v)));
    if (!in_vertex_region(to, image)) continue;
    const auto snapped = to.nearest_vertex(image);
    if (!snapped) continue;
    out.table[v] = *snapped;
    out.mappable.push_back(static_cast<VertexId>(v));
    out.snap_error = std::max(out.snap_error, distance(image, to.position(*snapped)));
  }
  return out;
}

}  // namespace

std::shared_ptr<const PlanarMap> identity_map() {
  return std::make_shared<FunctionMap>("identity", [](Point2 p) { return p; },
                                       [](Point2 p) { return p; });
}

std::shared_ptr<const PlanarMap> similarity_map(double scale, double rotation, Point2 t) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("similarity scale must be > 0");
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  return std::make_shared<FunctionMap>(
      "similarity",
      [=](Point2 p) {
        return Point2{scale * (c * p.x - s * p.y) + t.x, scale * (s * p.x + c * p.y) + t.y};
      },
      [=](Point2 p) {
        const Point2 q{p.x - t.x, p.y - t.y};
        return Point2{(c * q.x + s * q.y) / scale, (-s * q.x + c * q.y) / scale};
      });
}

std::shared_ptr<const PlanarMap> disk_automorphism(Complex a) {
  if (!(std::abs(a) < 1.0)) throw ConfigError("disk automorphism needs |a| < 1");
  return std::make_shared<FunctionMap>(
      "disk_automorphism",
      [a](Point2 p) {
        const Complex z = to_complex(p);
        return to_point((z - a) / (1.0 - std::conj(a) * z));
      },
      [a](Point2 p) {
        const Complex w = to_complex(p);
        return to_point((w + a) / (1.0 + std::conj(a) * w));
      });
}

std::shared_ptr<const PlanarMap> power_map(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("power map needs alpha > 0");
  return std::make_shared<FunctionMap>(
      "power", [alpha](Point2 p) { return polar_power(p, alpha); },
      [alpha](Point2 p) { return polar_power(p, 1.0 / alpha); });
}

std::shared_ptr<const PlanarMap> cayley_map() {
  const Complex i{0.0, 1.0};
  return std::make_shared<FunctionMap>(
      "cayley", [i](Point2 p) { return to_point(mobius(1.0, -i, 1.0, i, to_complex(p))); },
      [i](Point2 p) { return to_point(mobius(i, i, -1.0, 1.0, to_complex(p))); });
}

std::shared_ptr<const PlanarMap> inverse_cayley_map() { return inverse_of(cayley_map()); }

std::shared_ptr<const PlanarMap> mobius_map(Complex a, Complex b, Complex c, Complex d) {
  if (std::abs(a * d - b * c) == 0.0) throw ConfigError("mobius map needs ad - bc != 0");
  return std::make_shared<FunctionMap>(
      "mobius", [=](Point2 p) { return to_point(mobius(a, b, c, d, to_complex(p))); },
      [=](Point2 p) { return to_point(mobius(d, -b, -c, a, to_complex(p))); });
}

std::shared_ptr<const PlanarMap> inverse_of(std::shared_ptr<const PlanarMap> map) {
  return std::make_shared<InverseMap>(std::move(map));
}

std::shared_ptr<const PlanarMap> compose(std::shared_ptr<const PlanarMap> first,
                                         std::shared_ptr<const PlanarMap> second) {
  const std::string name = second->name() + "*" + first->name();
  return std::make_shared<FunctionMap>(
      name, [first, second](Point2 p) { return second->forward(first->forward(p)); },
      [first, second](Point2 p) { return first->inverse(second->inverse(p)); });
}

MappingPair MappingPair::from_planar_map(std::shared_ptr<const QuasihyperbolicMetric> source,
                                         std::shared_ptr<const QuasihyperbolicMetric> target,
                                         std::shared_ptr<const PlanarMap> map) {
  const DomainSample& src = source->base();
  const DomainSample& tgt = target->base();
  if (!src.shape() || !tgt.shape() || !src.spec() || !tgt.spec()) {
    throw ConfigError("planar maps need domains built from shapes");
  }
  MappingPair m;
  const Snapped fwd = snap_images(src, tgt, [&](Point2 p) { return map->forward(p); });
  const Snapped inv = snap_images(tgt, src, [&](Point2 p) { return map->inverse(p); });
  if (fwd.mappable.empty()) throw ConfigError("no source vertex maps into the target domain");
  m.forward_ = fwd.table;
  m.mappable_ = fwd.mappable;
  m.inverse_ = inv.table;
  m.inverse_mappable_ = inv.mappable;
  m.snap_error_ = std::max(fwd.snap_error, inv.snap_error);
  for (VertexId v : m.mappable_) {
    const Point2 p = src.position(v);
    m.round_trip_error_ = std::max(m.round_trip_error_, distance(map->inverse(map->forward(p)), p));
  }
  for (VertexId v : m.inverse_mappable_) {
    const Point2 p = tgt.position(v);
    m.round_trip_error_ = std::max(m.round_trip_error_, distance(map->forward(map->inverse(p)), p));
  }
  for (const Edge& e : src.graph().edges()) {
    if (m.forward_[e.u] == kNoVertex || m.forward_[e.v] == kNoVertex) continue;
    m.continuity_modulus_ =
        std::max(m.continuity_modulus_,
                 distance(map->forward(src.position(e.u)), map->forward(src.position(e.v))));
  }
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.map_ = std::move(map);
  return m;
}

MappingPair MappingPair::vertex_identity(std::shared_ptr<const QuasihyperbolicMetric> source,
                                         std::shared_ptr<const QuasihyperbolicMetric> target) {
  if (source->base().size() != target->base().size()) {
    throw ConfigError("vertex identity needs equally sized vertex sets");
  }
  MappingPair m;
  const std::size_t n = source->base().size();
  m.forward_.resize(n);
  for (std::size_t v = 0; v < n; ++v) m.forward_[v] = static_cast<VertexId>(v);
  m.inverse_ = m.forward_;
  m.mappable_ = m.forward_;
  m.inverse_mappable_ = m.forward_;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  return m;
}

MappingPair MappingPair::from_tables(std::shared_ptr<const QuasihyperbolicMetric> source,
                                     std::shared_ptr<const QuasihyperbolicMetric> target,
                                     std::vector<VertexId> forward, std::vector<VertexId> inverse) {
  if (forward.size() != source->base().size() || inverse.size() != target->base().size()) {
    throw ConfigError("vertex tables do not match the domain sizes");
  }
  MappingPair m;
  for (std::size_t v = 0; v < forward.size(); ++v) {
    if (forward[v] == kNoVertex) continue;
    if (forward[v] >= inverse.size()) throw ConfigError("vertex table entry out of range");
    m.mappable_.push_back(static_cast<VertexId>(v));
  }
  for (std::size_t v = 0; v < inverse.size(); ++v) {
    if (inverse[v] == kNoVertex) continue;
    if (inverse[v] >= forward.size()) throw ConfigError("vertex table entry out of range");
    m.inverse_mappable_.push_back(static_cast<VertexId>(v));
  }
  if (m.mappable_.empty()) throw ConfigError("vertex table maps nothing");
  m.forward_ = std::move(forward);
  m.inverse_ = std::move(inverse);
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  return m;
}

MappingPair MappingPair::inverted() const {
  MappingPair m = *this;
  std::swap(m.source_, m.target_);
  std::swap(m.forward_, m.inverse_);
  std::swap(m.mappable_, m.inverse_mappable_);
  if (map_) m.map_ = inverse_of(map_);
  return m;
}

}  // namespace qhgeo
