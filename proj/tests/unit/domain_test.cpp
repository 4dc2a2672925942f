#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qhgeo/domain.hpp"
#include "qhgeo/error.hpp"
#include "qhgeo/finite_metric.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo {
namespace {

ShapeSpec disk_spec(double h, double radius = 1.0) {
  ShapeSpec s;
  s.kind = ShapeKind::kDisk;
  s.radius = radius;
  s.resolution = h;
  return s;
}
ShapeSpec square_spec(double h) {
  ShapeSpec s;
  s.kind = ShapeKind::kSquare;
  s.side = 1.0;
  s.resolution = h;
  return s;
}
ShapeSpec l_spec(double h) {
  ShapeSpec s;
  s.kind = ShapeKind::kLShape;
  s.arm_width = 1.0;
  s.arm_length = 2.0;
  s.resolution = h;
  return s;
}

VertexId at(const DomainSample& d, double x, double y) {
  const auto v = d.nearest_vertex({x, y});
  EXPECT_TRUE(v.has_value());
  return *v;
}

TEST(GridDomain, SquareAtCoarseResolutionHasOneCentre) {
  ShapeSpec s = square_spec(0.5);
  s.exclusion_band = 1.0;
  const auto d = build_grid_domain(s);
  ASSERT_EQ(d->size(), 1u);
  EXPECT_EQ(d->position(0), (Point2{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(d->boundary_distance(0), 0.5);
}

TEST(GridDomain, DiskBoundaryDistanceIsAnalytic) {
  const auto d = build_grid_domain(disk_spec(0.1));
  for (VertexId v = 0; v < d->size(); ++v) {
    EXPECT_NEAR(d->boundary_distance(v), 1.0 - norm(d->position(v)), 1e-15);
  }
}

TEST(GridDomain, AnnulusBoundaryDistanceIsAnalytic) {
  ShapeSpec s;
  s.kind = ShapeKind::kAnnulus;
  s.inner_radius = 0.2;
  s.radius = 1.0;
  s.resolution = 0.05;
  const auto d = build_grid_domain(s);
  for (VertexId v = 0; v < d->size(); ++v) {
    const double r = norm(d->position(v));
    EXPECT_NEAR(d->boundary_distance(v), std::min(r - 0.2, 1.0 - r), 1e-15);
  }
}

TEST(GridDomain, LShapeBoundaryDistanceIsAnalytic) {
  const auto d = build_grid_domain(l_spec(0.05));
  for (VertexId v = 0; v < d->size(); ++v) {
    EXPECT_NEAR(d->boundary_distance(v), oracle::l_shape_boundary_distance(d->position(v)), 1e-12);
  }
}

TEST(GridDomain, BoundaryDistanceMatchesBoundarySamples) {
  // d_G is the minimum over the boundary up to the sample spacing.
  const auto d = build_grid_domain(square_spec(0.05));
  for (VertexId v = 0; v < d->size(); v += 7) {
    double best = oracle::kInf;
    for (std::size_t s = 0; s < d->boundary_sample_count(); ++s) {
      best = std::min(best, d->ambient().to_boundary_sample(v, s));
    }
    EXPECT_GE(best, d->boundary_distance(v) - 1e-15);
    EXPECT_LE(best, std::hypot(d->boundary_distance(v), 0.05));
  }
}

TEST(GridDomain, InvalidSpecsRejected) {
  EXPECT_THROW(build_grid_domain(disk_spec(0.0)), ConfigError);
  EXPECT_THROW(build_grid_domain(disk_spec(0.1, -1.0)), ConfigError);
  ShapeSpec a;
  a.kind = ShapeKind::kAnnulus;
  a.inner_radius = 1.0;
  a.radius = 0.5;
  EXPECT_THROW(build_grid_domain(a), ConfigError);
  // Too coarse for any vertex to survive the exclusion band.
  EXPECT_THROW(build_grid_domain(disk_spec(0.9)), ConfigError);
}

TEST(GridDomain, ChordAcrossDiskIsNearlyStraight) {
  const auto d = build_grid_domain(disk_spec(0.05));
  EXPECT_EQ(graph_distance(*d, at(*d, 0.3, 0.3), at(*d, 0.3, 0.3)), 0.0);
  const double g = graph_distance(*d, at(*d, -0.5, 0.0), at(*d, 0.5, 0.0));
  EXPECT_NEAR(g, 1.0, 0.01);
}

TEST(GridDomain, LShapeArmsAreFartherThanEuclidean) {
  // Coarse 10x10-scale instance: h = 0.2 on arms of length 2.
  ShapeSpec s = l_spec(0.2);
  s.exclusion_band = 1.0;
  const auto d = build_grid_domain(s);
  const VertexId a = at(*d, 1.8, 0.4);
  const VertexId b = at(*d, 0.4, 1.8);
  const double euclid = d->ambient_distance(a, b);
  EXPECT_GT(graph_distance(*d, a, b), euclid * 1.05);
  // Naive Dijkstra on the same edge set agrees with the library.
  const auto w = oracle::adjacency(d->size(), d->graph().edges());
  EXPECT_NEAR(oracle::dense_dijkstra(w, a)[b], graph_distance(*d, a, b), 1e-12);
}

TEST(GridDomain, AmbientMetricAxioms) {
  const auto d = build_grid_domain(l_spec(0.05));
  Rng rng(4);
  const auto pool = sample_subset(interior_vertices(*d), 40, rng);
  std::vector<std::array<std::size_t, 3>> triples;
  for (int i = 0; i < 2000; ++i) triples.push_back({rng.index(40), rng.index(40), rng.index(40)});
  const auto ambient = FiniteMetric::tabulate(
      pool, [&](VertexId a, VertexId b) { return d->ambient_distance(a, b); });
  EXPECT_TRUE(check_metric_axioms(ambient, triples).ok);
  const auto graph = FiniteMetric::from_rows(
      pool, [&](VertexId a) { return d->length_metric().tree(a)->distance; });
  EXPECT_TRUE(check_metric_axioms(graph, triples).ok);
}

TEST(Quasiconvexity, ConvexShapesNearOne) {
  for (const ShapeSpec& s : {square_spec(0.02), disk_spec(0.02)}) {
    const auto d = build_grid_domain(s);
    Rng rng(8);
    const auto pairs = sample_pairs(interior_vertices(*d), 2000, rng);
    const auto e = estimate_quasiconvexity(*d, pairs);
    EXPECT_GE(e.c, 1.0);
    EXPECT_LE(e.c, 1.01);
  }
}

TEST(Quasiconvexity, LShapeNearRootTwo) {
  const auto d = build_grid_domain(l_spec(0.05));
  // Pairs straddling the reflex corner along the anti-diagonal.
  std::vector<VertexPair> pairs;
  for (double t = 0.1; t < 0.9; t += 0.1) {
    pairs.push_back({at(*d, 1.0 + t, 1.0 - t), at(*d, 1.0 - t, 1.0 + t)});
  }
  pairs.push_back({at(*d, 1.9, 0.95), at(*d, 0.95, 1.9)});
  const auto e = estimate_quasiconvexity(*d, pairs);
  // Curve through the corner vs straight distance: exactly sqrt 2 for
  // symmetric pairs on lines through (1, 1) at 45 degrees.
  EXPECT_GT(e.c, 1.3);
  EXPECT_LT(e.c, std::numbers::sqrt2 * 1.02);
}

TEST(Quasiconvexity, CoincidentPairsSkipped) {
  const auto d = build_grid_domain(square_spec(0.1));
  const std::vector<VertexPair> same{{3, 3}, {5, 5}};
  const auto only_same = estimate_quasiconvexity(*d, same);
  EXPECT_EQ(only_same.pairs_used, 0u);
  EXPECT_EQ(only_same.skipped, 2u);
  EXPECT_EQ(only_same.c, 1.0);
  const auto last = static_cast<VertexId>(d->size() - 1);
  const std::vector<VertexPair> mixed{{3, 3}, {0, last}};
  const std::vector<VertexPair> clean{{0, last}};
  EXPECT_EQ(estimate_quasiconvexity(*d, mixed).c, estimate_quasiconvexity(*d, clean).c);
}

TEST(BallContainment, DiskCentreAtGuaranteedRadius) {
  const auto d = build_grid_domain(disk_spec(0.02));
  const VertexId o = at(*d, 0.0, 0.0);
  const double r = guaranteed_ball_radius(*d, o);
  EXPECT_NEAR(r, 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(check_ball_containment(*d, o, r).contained);
  EXPECT_TRUE(check_ball_containment(*d, o, 0.0).contained);
  const auto outside = check_ball_containment(*d, o, 1.2);
  EXPECT_FALSE(outside.contained);
  ASSERT_TRUE(outside.first_violation.has_value());
  EXPECT_GE(norm(*outside.first_violation), 1.0);
}

TEST(BallContainment, LShapeNearReflexCorner) {
  const auto d = build_grid_domain(l_spec(0.02));
  const VertexId x = at(*d, 1.1, 1.1 - 0.3);  // below the corner, in the horizontal arm
  const double r = guaranteed_ball_radius(*d, x);
  EXPECT_TRUE(check_ball_containment(*d, x, r).contained);
  // Well above the bound the ball pokes out past the corner.
  const auto big = check_ball_containment(*d, x, 1.6 * d->boundary_distance(x));
  EXPECT_FALSE(big.contained);
  ASSERT_TRUE(big.first_violation.has_value());
  EXPECT_FALSE(d->shape()->contains(*big.first_violation));
}

TEST(GraphImport, BoundaryDistancesFromGraph) {
  // Path 0 - 1 - 2 - 3 - 4 with both ends on the boundary.
  GraphImport g;
  g.vertex_count = 5;
  g.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 2.0}, {3, 4, 1.0}};
  g.boundary = {0, 4};
  const auto d = import_length_graph(g);
  ASSERT_EQ(d->size(), 3u);
  EXPECT_DOUBLE_EQ(d->boundary_distance(0), 1.0);
  EXPECT_DOUBLE_EQ(d->boundary_distance(1), 2.0);
  EXPECT_DOUBLE_EQ(d->boundary_distance(2), 1.0);
  EXPECT_DOUBLE_EQ(d->ambient_distance(0, 2), 3.0);
  EXPECT_FALSE(d->embedded());
}

TEST(GraphImport, InvalidInputsRejected) {
  GraphImport g;
  g.vertex_count = 3;
  g.edges = {{0, 1, 1.0}};
  g.boundary = {0};
  EXPECT_THROW(import_length_graph(g), ConfigError);  // disconnected
  g.edges.push_back({1, 2, 1.0});
  g.boundary = {};
  EXPECT_THROW(import_length_graph(g), ConfigError);  // no boundary
  g.boundary = {0};
  g.quasiconvexity = 0.5;
  EXPECT_THROW(import_length_graph(g), ConfigError);  // c < 1
}

TEST(GridDomain, DiameterIsAnalytic) {
  EXPECT_DOUBLE_EQ(build_grid_domain(disk_spec(0.1))->diameter(), 2.0);
  EXPECT_DOUBLE_EQ(build_grid_domain(square_spec(0.1))->diameter(), std::numbers::sqrt2);
}

}  // namespace
}  // namespace qhgeo
