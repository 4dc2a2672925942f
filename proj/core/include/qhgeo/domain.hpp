#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qhgeo/geometry.hpp"
#include "qhgeo/graph_metric.hpp"
#include "qhgeo/length_graph.hpp"
#include "qhgeo/shapes.hpp"

namespace qhgeo {

using VertexPair = std::pair<VertexId, VertexId>;

/// Distance oracle of the ambient space X on the sampled interior points and
/// boundary samples of a domain G in X.
class AmbientMetric {
 public:
  virtual ~AmbientMetric() = default;

  virtual double distance(VertexId a, VertexId b) const = 0;
  /// Distances from `a` to every interior vertex.
  virtual std::vector<double> row(VertexId a) const;
  virtual double to_boundary_sample(VertexId a, std::size_t sample) const = 0;
  /// Interior vertices at distance < radius from `center`, ascending ids.
  virtual std::vector<VertexId> open_ball(VertexId center, double radius) const;
  /// Number of interior vertices.
  virtual std::size_t size() const = 0;
};

/// Euclidean ambient metric on embedded points.
class EuclideanAmbient final : public AmbientMetric {
 public:
  EuclideanAmbient(std::vector<Point2> interior, std::vector<Point2> boundary)
      : interior_(std::move(interior)), boundary_(std::move(boundary)) {}
  double distance(VertexId a, VertexId b) const override {
    return qhgeo::distance(interior_[a], interior_[b]);
  }
  double to_boundary_sample(VertexId a, std::size_t s) const override {
    return qhgeo::distance(interior_[a], boundary_[s]);
  }
  std::size_t size() const override { return interior_.size(); }

 private:
  std::vector<Point2> interior_;
  std::vector<Point2> boundary_;
};

/// Lattice index of a grid domain: maps (i, j) to the vertex at (i h, j h).
struct GridIndex {
  double spacing = 0.0;
  std::int64_t i0 = 0;
  std::int64_t j0 = 0;
  std::int64_t ni = 0;
  std::int64_t nj = 0;
  std::vector<VertexId> cells;

  VertexId at(std::int64_t i, std::int64_t j) const {
    if (i < i0 || j < j0 || i >= i0 + ni || j >= j0 + nj) return kNoVertex;
    return cells[static_cast<std::size_t>((i - i0) * nj + (j - j0))];
  }
};

/// A discretized incomplete metric space: interior sample points of G with a
/// length graph, boundary samples, boundary distances d_G and the ambient
/// metric of X. Immutable after construction.
class DomainSample {
 public:
  struct Parts {
    LengthGraph graph;
    std::vector<double> boundary_distance;
    std::shared_ptr<const AmbientMetric> ambient;
    std::vector<Point2> positions;           // empty when not embedded
    std::vector<Point2> boundary_positions;  // empty when not embedded
    std::size_t boundary_sample_count = 0;
    std::shared_ptr<const Shape> shape;      // analytic geometry, if any
    std::optional<ShapeSpec> spec;
    std::optional<GridIndex> grid;
    double quasiconvexity = 1.0;
    double resolution = 0.0;
    bool bounded = true;
    /// Diameter of the completion when it differs from the vertex scan;
    /// evaluated on first use.
    std::function<double()> closure_diameter;
  };

  /// Validates positivity of d_G, connectivity and c >= 1 (ConfigError).
  explicit DomainSample(Parts parts);

  std::uint64_t id() const { return id_; }
  std::size_t size() const { return length_.size(); }
  const LengthGraph& graph() const { return length_.graph(); }
  const GraphMetric& length_metric() const { return length_; }

  double boundary_distance(VertexId v) const { return boundary_distance_[v]; }
  const std::vector<double>& boundary_distances() const { return boundary_distance_; }

  const AmbientMetric& ambient() const { return *ambient_; }
  double ambient_distance(VertexId a, VertexId b) const { return ambient_->distance(a, b); }

  bool embedded() const { return !positions_.empty(); }
  Point2 position(VertexId v) const { return positions_[v]; }
  const std::vector<Point2>& positions() const { return positions_; }
  const std::vector<Point2>& boundary_positions() const { return boundary_positions_; }
  std::size_t boundary_sample_count() const { return boundary_count_; }

  /// Analytic shape (null for imported graphs and deformed spaces).
  const Shape* shape() const { return shape_.get(); }
  std::shared_ptr<const Shape> shared_shape() const { return shape_; }
  const std::optional<ShapeSpec>& spec() const { return spec_; }

  double quasiconvexity() const { return c_; }
  double resolution() const { return resolution_; }
  bool bounded() const { return bounded_; }

  /// Nearest interior vertex to p; requires an embedding. Returns nullopt
  /// when the nearest lattice neighbourhood holds no vertex.
  std::optional<VertexId> nearest_vertex(Point2 p) const;

  /// Vertex with maximal d_G (lowest index on ties).
  VertexId deepest_vertex() const;

  /// Diameter: analytic for built-in shapes, the closure diameter when one
  /// was supplied, else the maximum ambient distance over vertices (exact
  /// scan up to 2000 vertices, farthest-point sweeps beyond). Cached.
  double diameter() const;

 private:
  std::uint64_t id_;
  GraphMetric length_;
  std::vector<double> boundary_distance_;
  std::shared_ptr<const AmbientMetric> ambient_;
  std::vector<Point2> positions_;
  std::vector<Point2> boundary_positions_;
  std::size_t boundary_count_;
  std::shared_ptr<const Shape> shape_;
  std::optional<ShapeSpec> spec_;
  std::optional<GridIndex> grid_;
  double c_;
  double resolution_;
  bool bounded_;
  std::function<double()> closure_diameter_;
  mutable std::atomic<double> diameter_cache_{-1.0};
};

/// Uniform grid restricted to the shape interior with a 16-neighbour stencil
/// (axis, diagonal and knight moves) and exact Euclidean edge lengths.
/// Throws ConfigError on an empty or disconnected interior.
std::shared_ptr<const DomainSample> build_grid_domain(const ShapeSpec& spec);

/// Imported length graph. Vertices listed in `boundary` form the boundary
/// samples; the rest are interior. The ambient metric is the shortest-path
/// metric of the full graph, d_G its distance to the boundary vertices.
struct GraphImport {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<VertexId> boundary;
  std::vector<Point2> positions;  // optional
  double quasiconvexity = 1.0;
};
std::shared_ptr<const DomainSample> import_length_graph(const GraphImport& import);

double graph_distance(const DomainSample& domain, VertexId x, VertexId y);

struct QuasiconvexityEstimate {
  double c = 1.0;
  VertexPair worst{kNoVertex, kNoVertex};
  std::size_t pairs_used = 0;
  std::size_t skipped = 0;  // coincident pairs
};

/// Max over pairs of curve length / ambient distance, sampled, so a lower
/// bound on c. With an analytic shape the curve is the graph geodesic
/// shortened by line of sight inside G (the straight segment when visible);
/// otherwise it is the graph geodesic itself.
QuasiconvexityEstimate estimate_quasiconvexity(const DomainSample& domain,
                                               std::span<const VertexPair> pairs);

struct BallContainmentReport {
  bool contained = true;
  std::size_t samples_checked = 0;
  std::optional<Point2> first_violation;            // embedded domains
  std::optional<std::size_t> first_violating_sample;  // boundary sample index
};

/// Whether every ambient sample within distance < r of x lies in G. Ambient
/// samples are the lattice of spacing h around x together with the boundary
/// samples (analytic shapes), or boundary samples only (imports).
BallContainmentReport check_ball_containment(const DomainSample& domain, VertexId x, double r);

/// Largest radius guaranteed contained for a c-quasiconvex ambient space:
/// 2 d_G(x) / (2 + c).
double guaranteed_ball_radius(const DomainSample& domain, VertexId x);

}  // namespace qhgeo
