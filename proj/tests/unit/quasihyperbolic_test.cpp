#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qhgeo/finite_metric.hpp"
#include "qhgeo/quasihyperbolic.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo {
namespace {

std::shared_ptr<const QuasihyperbolicMetric> disk_qh(double h) {
  ShapeSpec s;
  s.kind = ShapeKind::kDisk;
  s.resolution = h;
  return make_qh_metric(build_grid_domain(s));
}

std::shared_ptr<const QuasihyperbolicMetric> qh_of(ShapeKind kind, double h) {
  ShapeSpec s;
  s.kind = kind;
  s.side = 1.0;
  s.arm_width = 1.0;
  s.arm_length = 2.0;
  s.truncation_radius = 4.0;
  s.resolution = h;
  return make_qh_metric(build_grid_domain(s));
}

VertexId at(const QuasihyperbolicMetric& k, double x, double y) { return *k.base().nearest_vertex({x, y}); }

TEST(QhEdgeWeight, TrapezoidRule) {
  EXPECT_DOUBLE_EQ(qh_edge_weight(0.1, 0.5, 0.25), 0.1 * (2.0 + 4.0) / 2.0);
  const auto k = disk_qh(0.1);
  const LengthGraph& base = k->base().graph();
  const auto le = base.edges();
  const auto ke = k->graph().edges();
  ASSERT_EQ(le.size(), ke.size());
  for (std::size_t i = 0; i < le.size(); ++i) {
    const double expected = qh_edge_weight(le[i].length, k->base().boundary_distance(le[i].u),
                                           k->base().boundary_distance(le[i].v));
    EXPECT_DOUBLE_EQ(ke[i].length, expected);
    EXPECT_GT(ke[i].length, 0.0);
  }
}

TEST(QhMetric, AxiomsAndDensityLowerBound) {
  const auto k = qh_of(ShapeKind::kLShape, 0.05);
  const DomainSample& d = k->base();
  double max_dg = 0.0;
  for (double x : d.boundary_distances()) max_dg = std::max(max_dg, x);
  Rng rng(2);
  const auto pool = sample_subset(interior_vertices(d), 30, rng);
  for (VertexId a : pool) {
    EXPECT_EQ(k->distance(a, a), 0.0);
    for (VertexId b : pool) EXPECT_GE(k->distance(a, b), graph_distance(d, a, b) / max_dg - 1e-12);
  }
  std::vector<std::array<std::size_t, 3>> triples;
  for (int i = 0; i < 3000; ++i) triples.push_back({rng.index(30), rng.index(30), rng.index(30)});
  const auto m = FiniteMetric::from_rows(pool, [&](VertexId a) { return k->metric().tree(a)->distance; });
  EXPECT_TRUE(check_metric_axioms(m, triples).ok);
}

TEST(QhMetric, DiskRadialCalibration) {
  const auto k = disk_qh(0.01);
  const VertexId o = at(*k, 0.0, 0.0);
  const VertexId y = at(*k, 0.5, 0.0);
  EXPECT_NEAR(k->distance(o, y), std::log(2.0), 0.02 * std::log(2.0));
}

TEST(QhMetric, CalibrationErrorShrinksUnderRefinement) {
  auto error = [](double h) {
    const auto k = disk_qh(h);
    return std::abs(k->distance(at(*k, 0.0, 0.0), at(*k, 0.5, 0.0)) / std::log(2.0) - 1.0);
  };
  EXPECT_LT(error(0.01), error(0.02));
}

TEST(QhMetric, PuncturedPlaneRadial) {
  const auto k = qh_of(ShapeKind::kPuncturedPlane, 0.02);
  // |x| = 1, |y| = e on one ray.
  const VertexId x = at(*k, 1.0, 0.0);
  const VertexId y = at(*k, 2.72, 0.0);
  const double oracle_k = std::log(norm(k->base().position(y)) / norm(k->base().position(x)));
  EXPECT_NEAR(k->distance(x, y), oracle_k, 0.02 * oracle_k);
}

TEST(QhMetric, HalfPlaneVertical) {
  const auto k = qh_of(ShapeKind::kHalfPlane, 0.02);
  const VertexId x = at(*k, 0.0, 1.0);
  const VertexId y = at(*k, 0.0, 2.72);
  const double oracle_k = std::log(k->base().position(y).y / k->base().position(x).y);
  EXPECT_NEAR(k->distance(x, y), oracle_k, 0.02 * oracle_k);
}

TEST(QhGeodesic, SingleVertexAndBending) {
  const auto k = disk_qh(0.02);
  const VertexId x = at(*k, -0.9, 0.0);
  const VertexId y = at(*k, 0.9, 0.0);
  EXPECT_EQ(k->geodesic(x, x), std::vector<VertexId>{x});
  const auto path = k->geodesic(x, y);
  double deepest = 0.0;
  for (VertexId v : path) deepest = std::max(deepest, k->base().boundary_distance(v));
  EXPECT_GT(deepest, k->base().boundary_distance(x) + 0.5);
}

TEST(QhGeodesic, RadialPathStaysNearRadius) {
  const auto k = disk_qh(0.01);
  const auto path = k->geodesic(at(*k, 0.1, 0.0), at(*k, 0.8, 0.0));
  for (VertexId v : path) EXPECT_LE(std::abs(k->base().position(v).y), 0.01 + 1e-12);
}

TEST(DistanceBounds, CoincidentPairTrivial) {
  const auto k = disk_qh(0.05);
  const std::vector<VertexPair> same{{4, 4}};
  EXPECT_TRUE(verify_distance_bounds(*k, same).violations.empty());
}

TEST(DistanceBounds, DiskExampleValues) {
  const auto k = disk_qh(0.01);
  const VertexId o = at(*k, 0.0, 0.0);
  const VertexId y = at(*k, 0.5, 0.0);
  const double kk = k->distance(o, y);
  const double d = 0.5;
  EXPECT_LE(d, (std::exp(kk) - 1.0) * 1.0 * 1.05);
  EXPECT_LE(d / 2.0, kk);
  EXPECT_LE(kk, 3.0 * d);
  const std::vector<VertexPair> pair{{o, y}};
  const auto r = verify_distance_bounds(*k, pair);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.local_pairs, 1u);
}

TEST(DistanceBounds, SweepHasNoViolations) {
  for (ShapeKind kind : {ShapeKind::kDisk, ShapeKind::kSquare, ShapeKind::kLShape}) {
    const auto k = qh_of(kind, 0.02);
    Rng rng(31);
    const auto pairs = sample_pairs(interior_vertices(k->base()), 2000, rng);
    const auto r = verify_distance_bounds(*k, pairs);
    EXPECT_EQ(r.pairs_checked, pairs.size());
    EXPECT_TRUE(r.violations.empty()) << to_string(kind);
  }
}

TEST(DistanceBounds, TinySlackProducesViolation) {
  const auto k = disk_qh(0.05);
  Rng rng(1);
  const auto pairs = sample_pairs(interior_vertices(k->base()), 400, rng);
  const auto r = verify_distance_bounds(*k, pairs, 0.5);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_GT(r.violations.front().lhs, r.violations.front().rhs);
}

TEST(Uniformity, SquareAndDiskConstants) {
  {
    const auto k = qh_of(ShapeKind::kSquare, 0.02);
    Rng rng(6);
    const auto pairs = sample_pairs(interior_vertices(k->base()), 100, rng);
    const auto r = estimate_uniformity(*k, pairs);
    EXPECT_GE(r.constant, 1.0);
    EXPECT_LE(r.constant, 3.0);
  }
  auto disk_a = [](double h) {
    const auto k = disk_qh(h);
    const std::vector<VertexPair> pairs{{at(*k, -0.9, 0.0), at(*k, 0.9, 0.0)},
                                        {at(*k, 0.0, -0.9), at(*k, 0.0, 0.9)},
                                        {at(*k, -0.6, -0.6), at(*k, 0.6, 0.6)}};
    return estimate_uniformity(*k, pairs).constant;
  };
  const double coarse = disk_a(0.02);
  const double fine = disk_a(0.01);
  EXPECT_LT(std::abs(fine / coarse - 1.0), 0.05);
}

TEST(Uniformity, CoincidentPairExcluded) {
  const auto k = disk_qh(0.05);
  const std::vector<VertexPair> clean{{0, 100}, {20, 300}};
  const std::vector<VertexPair> with_same{{0, 100}, {7, 7}, {20, 300}};
  const auto a = estimate_uniformity(*k, clean);
  const auto b = estimate_uniformity(*k, with_same);
  EXPECT_EQ(a.constant, b.constant);
  EXPECT_EQ(b.skipped, 1u);
}

}  // namespace
}  // namespace qhgeo
