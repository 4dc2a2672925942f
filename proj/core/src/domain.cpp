#include "qhgeo/domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qhgeo/error.hpp"

namespace qhgeo {

namespace {

std::atomic<std::uint64_t> next_domain_id{1};

// Half of the 16-neighbour stencil; the other half is implied by symmetry.
constexpr std::array<std::array<int, 2>, 8> kForwardStencil{{
    {1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}}};

// Shortest-path metric of the full imported graph, restricted to interior
// vertices (indices remapped).
class GraphAmbient final : public AmbientMetric {
 public:
  GraphAmbient(LengthGraph full, std::vector<VertexId> interior_to_full,
               std::vector<VertexId> boundary_to_full)
      : metric_(std::move(full)),
        interior_to_full_(std::move(interior_to_full)),
        boundary_to_full_(std::move(boundary_to_full)) {}

  double distance(VertexId a, VertexId b) const override {
    return metric_.distance(interior_to_full_[a], interior_to_full_[b]);
  }
  std::vector<double> row(VertexId a) const override {
    const auto tree = metric_.tree(interior_to_full_[a]);
    std::vector<double> out(interior_to_full_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tree->distance[interior_to_full_[i]];
    return out;
  }
  double to_boundary_sample(VertexId a, std::size_t s) const override {
    return metric_.distance(interior_to_full_[a], boundary_to_full_[s]);
  }
  std::size_t size() const override { return interior_to_full_.size(); }

 private:
  GraphMetric metric_;
  std::vector<VertexId> interior_to_full_;
  std::vector<VertexId> boundary_to_full_;
};

}  // namespace

std::vector<double> AmbientMetric::row(VertexId a) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = distance(a, static_cast<VertexId>(i));
  return out;
}

std::vector<VertexId> AmbientMetric::open_ball(VertexId center, double radius) const {
  const std::vector<double> r = row(center);
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < radius) out.push_back(static_cast<VertexId>(i));
  }
  return out;
}

DomainSample::DomainSample(Parts parts)
    : id_(next_domain_id.fetch_add(1)),
      length_(std::move(parts.graph)),
      boundary_distance_(std::move(parts.boundary_distance)),
      ambient_(std::move(parts.ambient)),
      positions_(std::move(parts.positions)),
      boundary_positions_(std::move(parts.boundary_positions)),
      boundary_count_(parts.boundary_sample_count),
      shape_(std::move(parts.shape)),
      spec_(std::move(parts.spec)),
      grid_(std::move(parts.grid)),
      c_(parts.quasiconvexity),
      resolution_(parts.resolution),
      bounded_(parts.bounded),
      closure_diameter_(std::move(parts.closure_diameter)) {
  const std::size_t n = length_.size();
  if (n == 0) throw ConfigError("domain has an empty interior (resolution too coarse?)");
  if (boundary_distance_.size() != n) throw InternalError("boundary distance size mismatch");
  if (!ambient_ || ambient_->size() != n) throw InternalError("ambient metric size mismatch");
  if (!positions_.empty() && positions_.size() != n) {
    throw InternalError("position table size mismatch");
  }
  for (double d : boundary_distance_) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ConfigError("boundary distance must be positive at every interior point");
    }
  }
  if (!length_.graph().is_connected()) throw ConfigError("domain interior is disconnected");
  if (!(c_ >= 1.0)) throw ConfigError("quasiconvexity constant must be >= 1");
}

std::optional<VertexId> DomainSample::nearest_vertex(Point2 p) const {
  if (positions_.empty()) return std::nullopt;
  VertexId best = kNoVertex;
  double best_d = std::numeric_limits<double>::infinity();
  if (grid_) {
    const auto ci = static_cast<std::int64_t>(std::llround(p.x / grid_->spacing));
    const auto cj = static_cast<std::int64_t>(std::llround(p.y / grid_->spacing));
    for (std::int64_t k = 0; k <= 3 && best == kNoVertex; ++k) {
      // Window grows until it holds a vertex.
      for (std::int64_t i = ci - k - 1; i <= ci + k + 1; ++i) {
        for (std::int64_t j = cj - k - 1; j <= cj + k + 1; ++j) {
          const VertexId v = grid_->at(i, j);
          if (v == kNoVertex) continue;
          const double d = distance(p, positions_[v]);
          if (d < best_d || (d == best_d && v < best)) {
            best_d = d;
            best = v;
          }
        }
      }
    }
    if (best == kNoVertex) return std::nullopt;
    return best;
  }
  for (std::size_t v = 0; v < positions_.size(); ++v) {
    const double d = distance(p, positions_[v]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<VertexId>(v);
    }
  }
  return best;
}

VertexId DomainSample::deepest_vertex() const {
  VertexId best = 0;
  for (std::size_t v = 1; v < boundary_distance_.size(); ++v) {
    if (boundary_distance_[v] > boundary_distance_[best]) best = static_cast<VertexId>(v);
  }
  return best;
}

double DomainSample::diameter() const {
  if (shape_) return shape_->diameter();
  const double cached = diameter_cache_.load();
  if (cached >= 0.0) return cached;
  if (closure_diameter_) {
    const double d = closure_diameter_();
    diameter_cache_.store(d);
    return d;
  }
  const std::size_t n = size();
  double best = 0.0;
  if (n <= 2000) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::vector<double> r = ambient_->row(static_cast<VertexId>(a));
      best = std::max(best, *std::max_element(r.begin(), r.end()));
    }
  } else {
    // Repeated farthest-point sweeps; a lower bound on the true diameter.
    VertexId source = 0;
    for (int sweep = 0; sweep < 16; ++sweep) {
      const std::vector<double> r = ambient_->row(source);
      const auto far = std::max_element(r.begin(), r.end());
      if (*far <= best && sweep > 1) break;
      best = std::max(best, *far);
      source = static_cast<VertexId>(far - r.begin());
    }
  }
  diameter_cache_.store(best);
  return best;
}

std::shared_ptr<const DomainSample> build_grid_domain(const ShapeSpec& spec) {
  std::shared_ptr<const Shape> shape = make_shape(spec);
  const double h = spec.resolution;
  const Box box = shape->vertex_box();
  const auto i_lo = static_cast<std::int64_t>(std::floor(box.lo.x / h)) - 1;
  const auto i_hi = static_cast<std::int64_t>(std::ceil(box.hi.x / h)) + 1;
  const auto j_lo = static_cast<std::int64_t>(std::floor(box.lo.y / h)) - 1;
  const auto j_hi = static_cast<std::int64_t>(std::ceil(box.hi.y / h)) + 1;

  GridIndex grid;
  grid.spacing = h;
  grid.i0 = i_lo;
  grid.j0 = j_lo;
  grid.ni = i_hi - i_lo + 1;
  grid.nj = j_hi - j_lo + 1;
  if (grid.ni * grid.nj > 50'000'000) throw ConfigError("grid too large for resolution");
  grid.cells.assign(static_cast<std::size_t>(grid.ni * grid.nj), kNoVertex);

  std::vector<Point2> positions;
  std::vector<double> boundary_distance;
  const double band = spec.exclusion_band * h;
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      const Point2 p{static_cast<double>(i) * h, static_cast<double>(j) * h};
      if (!shape->contains(p) || !shape->within_truncation(p)) continue;
      const double dg = shape->boundary_distance(p);
      if (!(dg > 0.0) || dg < band) continue;
      grid.cells[static_cast<std::size_t>((i - i_lo) * grid.nj + (j - j_lo))] =
          static_cast<VertexId>(positions.size());
      positions.push_back(p);
      boundary_distance.push_back(dg);
    }
  }
  if (positions.empty()) {
    throw ConfigError("empty interior: resolution too coarse for the shape");
  }

  std::vector<Edge> edges;
  edges.reserve(positions.size() * kForwardStencil.size());
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      const VertexId u = grid.at(i, j);
      if (u == kNoVertex) continue;
      for (const auto& [di, dj] : kForwardStencil) {
        const VertexId v = grid.at(i + di, j + dj);
        if (v == kNoVertex) continue;
        const Point2 a = positions[u];
        const Point2 b = positions[v];
        const bool inside = shape->contains(a + 0.25 * (b - a)) &&
                            shape->contains(a + 0.5 * (b - a)) &&
                            shape->contains(a + 0.75 * (b - a));
        if (!inside) continue;
        edges.push_back({u, v, distance(a, b)});
      }
    }
  }

  std::vector<Point2> boundary = shape->boundary_samples(h);
  DomainSample::Parts parts;
  parts.graph = LengthGraph(positions.size(), edges);
  parts.boundary_distance = std::move(boundary_distance);
  parts.ambient = std::make_shared<EuclideanAmbient>(positions, boundary);
  parts.positions = std::move(positions);
  parts.boundary_sample_count = boundary.size();
  parts.boundary_positions = std::move(boundary);
  parts.bounded = shape->bounded();
  parts.shape = std::move(shape);
  parts.spec = spec;
  parts.grid = std::move(grid);
  parts.quasiconvexity = 1.0;
  parts.resolution = h;
  return std::make_shared<const DomainSample>(std::move(parts));
}

std::shared_ptr<const DomainSample> import_length_graph(const GraphImport& import) {
  const std::size_t n = import.vertex_count;
  if (import.boundary.empty()) throw ConfigError("imported graph needs boundary vertices");
  if (!import.positions.empty() && import.positions.size() != n) {
    throw ConfigError("imported graph positions must cover every vertex");
  }
  LengthGraph full(n, import.edges);
  if (!full.is_connected()) throw ConfigError("imported graph is disconnected");

  std::vector<char> is_boundary(n, 0);
  for (VertexId b : import.boundary) {
    if (b >= n) throw ConfigError("boundary vertex out of range");
    is_boundary[b] = 1;
  }
  std::vector<VertexId> full_to_interior(n, kNoVertex);
  std::vector<VertexId> interior_to_full;
  for (VertexId v = 0; v < n; ++v) {
    if (!is_boundary[v]) {
      full_to_interior[v] = static_cast<VertexId>(interior_to_full.size());
      interior_to_full.push_back(v);
    }
  }
  std::vector<VertexId> boundary_to_full;
  for (VertexId v = 0; v < n; ++v) {
    if (is_boundary[v]) boundary_to_full.push_back(v);
  }

  std::vector<std::pair<VertexId, double>> seeds;
  for (VertexId b : boundary_to_full) seeds.emplace_back(b, 0.0);
  const std::vector<double> to_boundary = shortest_distances(full, seeds);

  std::vector<Edge> interior_edges;
  for (const Edge& e : full.edges()) {
    if (!is_boundary[e.u] && !is_boundary[e.v]) {
      interior_edges.push_back({full_to_interior[e.u], full_to_interior[e.v], e.length});
    }
  }

  DomainSample::Parts parts;
  parts.graph = LengthGraph(interior_to_full.size(), interior_edges);
  for (VertexId v : interior_to_full) parts.boundary_distance.push_back(to_boundary[v]);
  if (!import.positions.empty()) {
    for (VertexId v : interior_to_full) parts.positions.push_back(import.positions[v]);
    for (VertexId v : boundary_to_full) parts.boundary_positions.push_back(import.positions[v]);
  }
  parts.boundary_sample_count = boundary_to_full.size();
  parts.ambient = std::make_shared<GraphAmbient>(std::move(full), std::move(interior_to_full),
                                                 std::move(boundary_to_full));
  parts.quasiconvexity = import.quasiconvexity;
  parts.bounded = true;
  return std::make_shared<const DomainSample>(std::move(parts));
}

double graph_distance(const DomainSample& domain, VertexId x, VertexId y) {
  const double d = domain.length_metric().distance(x, y);
  if (!std::isfinite(d)) {
    throw InternalError("vertex " + std::to_string(y) + " unreachable from " + std::to_string(x));
  }
  return d;
}

namespace {

// Sphere tracing on the exact boundary distance; grazing segments that would
// need too many steps count as blocked, which only lengthens the curve.
bool segment_inside(const Shape& shape, Point2 a, Point2 b) {
  const double len = distance(a, b);
  if (len == 0.0) return true;
  const Point2 dir = (1.0 / len) * (b - a);
  const double floor = 1e-9 * std::max(len, 1.0);
  double t = 0.0;
  for (int step = 0; step < 4096; ++step) {
    const Point2 p = a + t * dir;
    if (!shape.contains(p)) return false;
    const double r = shape.boundary_distance(p);
    if (t + r >= len) return true;
    if (r < floor) return false;
    t += r;
  }
  return false;
}

// Length of the graph geodesic after greedy line-of-sight shortening.
double pulled_length(const DomainSample& domain, VertexId x, VertexId y) {
  const Shape& shape = *domain.shape();
  const Point2 px = domain.position(x);
  const Point2 py = domain.position(y);
  if (segment_inside(shape, px, py)) return distance(px, py);
  const std::vector<VertexId> path = domain.length_metric().path(x, y);
  double length = 0.0;
  std::size_t i = 0;
  while (i + 1 < path.size()) {
    std::size_t j = i + 1;
    while (j + 1 < path.size() &&
           segment_inside(shape, domain.position(path[i]), domain.position(path[j + 1]))) {
      ++j;
    }
    length += distance(domain.position(path[i]), domain.position(path[j]));
    i = j;
  }
  return length;
}

}  // namespace

QuasiconvexityEstimate estimate_quasiconvexity(const DomainSample& domain,
                                               std::span<const VertexPair> pairs) {
  QuasiconvexityEstimate out;
  double best = -1.0;
  for (const auto& [x, y] : pairs) {
    const double ambient = domain.ambient_distance(x, y);
    if (x == y || !(ambient > 0.0)) {
      ++out.skipped;
      continue;
    }
    const double length = domain.shape() && domain.embedded() ? pulled_length(domain, x, y)
                                                              : graph_distance(domain, x, y);
    const double ratio = length / ambient;
    ++out.pairs_used;
    if (ratio > best) {
      best = ratio;
      out.worst = {x, y};
    }
  }
  out.c = out.pairs_used > 0 ? best : 1.0;
  return out;
}

BallContainmentReport check_ball_containment(const DomainSample& domain, VertexId x, double r) {
  BallContainmentReport report;
  if (!(r > 0.0)) return report;
  if (const Shape* shape = domain.shape()) {
    const double h = domain.resolution();
    const Point2 c = domain.position(x);
    const auto i_lo = static_cast<std::int64_t>(std::floor((c.x - r) / h));
    const auto i_hi = static_cast<std::int64_t>(std::ceil((c.x + r) / h));
    const auto j_lo = static_cast<std::int64_t>(std::floor((c.y - r) / h));
    const auto j_hi = static_cast<std::int64_t>(std::ceil((c.y + r) / h));
    for (std::int64_t i = i_lo; i <= i_hi; ++i) {
      for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        const Point2 p{static_cast<double>(i) * h, static_cast<double>(j) * h};
        if (!(distance(p, c) < r)) continue;
        ++report.samples_checked;
        if (!shape->contains(p) && report.contained) {
          report.contained = false;
          report.first_violation = p;
        }
      }
    }
  }
  for (std::size_t s = 0; s < domain.boundary_sample_count(); ++s) {
    if (!(domain.ambient().to_boundary_sample(x, s) < r)) continue;
    ++report.samples_checked;
    if (report.contained) {
      report.contained = false;
      report.first_violating_sample = s;
      if (domain.embedded() && s < domain.boundary_positions().size()) {
        report.first_violation = domain.boundary_positions()[s];
      }
    }
  }
  return report;
}

double guaranteed_ball_radius(const DomainSample& domain, VertexId x) {
  return 2.0 * domain.boundary_distance(x) / (2.0 + domain.quasiconvexity());
}

}  // namespace qhgeo
