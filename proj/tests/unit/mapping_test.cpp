#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qhgeo/deformations.hpp"
#include "qhgeo/error.hpp"
#include "qhgeo/mapping_analysis.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo {
namespace {

std::shared_ptr<const QuasihyperbolicMetric> qh(ShapeKind kind, double h, double size = 1.0) {
  ShapeSpec s;
  s.kind = kind;
  s.radius = size;
  s.side = size;
  s.angle = std::numbers::pi;
  s.resolution = h;
  return make_qh_metric(build_grid_domain(s));
}

BallSampling sampling(std::size_t centres = 150) {
  BallSampling b;
  b.centres = centres;
  b.seed = 11;
  return b;
}

std::vector<VertexPair> pairs_of(const MappingPair& m, std::size_t n, std::uint64_t seed = 3) {
  Rng rng(seed);
  return sample_pairs(m.mappable(), n, rng);
}

TEST(PlanarMaps, RoundTrips) {
  const Point2 p{0.3, 0.2};
  for (const auto& f : {identity_map(), similarity_map(2.0, 0.4, {1.0, -1.0}),
                        disk_automorphism({0.5, 0.1}), power_map(2.0), cayley_map(),
                        inverse_cayley_map(), mobius_map(1.0, 2.0, 0.5, 3.0)}) {
    const Point2 q = f->inverse(f->forward(p));
    EXPECT_NEAR(q.x, p.x, 1e-12) << f->name();
    EXPECT_NEAR(q.y, p.y, 1e-12) << f->name();
  }
  EXPECT_THROW(disk_automorphism({1.0, 0.0}), ConfigError);
  EXPECT_THROW(power_map(0.0), ConfigError);
  EXPECT_THROW(mobius_map(1.0, 2.0, 2.0, 4.0), ConfigError);
}

TEST(PlanarMaps, ComposeAndInverse) {
  const auto f = compose(similarity_map(0.5), disk_automorphism({0.5, 0.0}));
  const Point2 p{0.4, 0.4};
  const Point2 expected = disk_automorphism({0.5, 0.0})->forward({0.2, 0.2});
  EXPECT_EQ(f->forward(p), expected);
  const auto g = inverse_of(f);
  EXPECT_EQ(g->inverse(p), f->forward(p));
  // The automorphism sends a to 0.
  const Point2 z = disk_automorphism({0.5, 0.0})->forward({0.5, 0.0});
  EXPECT_NEAR(norm(z), 0.0, 1e-15);
}

TEST(MappingPair, IdentityIsVertexIdentity) {
  const auto d = qh(ShapeKind::kDisk, 0.05);
  const auto m = MappingPair::from_planar_map(d, d, identity_map());
  ASSERT_EQ(m.mappable().size(), d->base().size());
  for (VertexId v = 0; v < d->base().size(); ++v) {
    EXPECT_EQ(m.forward(v), v);
    EXPECT_EQ(m.inverse(v), v);
  }
  EXPECT_EQ(m.round_trip_error(), 0.0);
}

TEST(MappingPair, ZeroAutomorphismIsIdentity) {
  const auto d = qh(ShapeKind::kDisk, 0.05);
  const auto m = MappingPair::from_planar_map(d, d, disk_automorphism({0.0, 0.0}));
  for (VertexId v : m.mappable()) EXPECT_EQ(m.forward(v), v);
}

TEST(MappingPair, PowerMapRoundTripWithinResolution) {
  const double h = 0.02;
  ShapeSpec q;
  q.kind = ShapeKind::kSector;
  q.angle = std::numbers::pi / 2;
  q.resolution = h;
  ShapeSpec half = q;
  half.angle = std::numbers::pi;
  const auto m = MappingPair::from_planar_map(make_qh_metric(build_grid_domain(q)),
                                              make_qh_metric(build_grid_domain(half)),
                                              power_map(2.0));
  EXPECT_FALSE(m.mappable().empty());
  EXPECT_LT(m.round_trip_error(), h);
  EXPECT_GT(m.continuity_modulus(), 0.0);
}

TEST(Neutral, IdentityEstimatorsAreOne) {
  const auto d = qh(ShapeKind::kDisk, 0.04);
  const auto m = MappingPair::from_planar_map(d, d, identity_map());
  EXPECT_EQ(estimate_partial_bilipschitz(m, 0.2, sampling()).constant, 1.0);
  EXPECT_EQ(estimate_relative(m, 0.2, sampling()).constant, 1.0);
  const auto pairs = pairs_of(m, 500);
  EXPECT_EQ(estimate_semisolid(m, pairs).constant, 1.0);
  EXPECT_EQ(estimate_qh_bilipschitz(m, pairs).constant, 1.0);
  const auto lb = estimate_local_bilipschitz(m, 0.2, sampling());
  EXPECT_EQ(lb.constant, 1.0);
  for (const auto& [x, cx] : lb.scale_table) EXPECT_EQ(cx, 1.0);
  EXPECT_EQ(estimate_local_quasisymmetry(m, 0.2, sampling()).slope, 1.0);
  const auto qi = estimate_quasi_isometry(m, pairs);
  EXPECT_EQ(qi.multiplicative, 1.0);
  EXPECT_EQ(qi.additive, 0.0);
  Rng rng(4);
  const auto pool = sample_subset(m.mappable(), 30, rng);
  std::vector<PointQuadruple> quads;
  for (int i = 0; i < 200; ++i) quads.push_back({rng.index(30), rng.index(30), rng.index(30), rng.index(30)});
  EXPECT_EQ(estimate_quasimobius(m, pool, quads).slope, 1.0);
}

TEST(Neutral, DoublingSimilarity) {
  const auto small = qh(ShapeKind::kDisk, 0.04);
  const auto big = qh(ShapeKind::kDisk, 0.08, 2.0);
  const auto m = MappingPair::from_planar_map(small, big, similarity_map(2.0));
  EXPECT_EQ(estimate_partial_bilipschitz(m, 0.2, sampling()).constant, 1.0);
  EXPECT_EQ(estimate_relative(m, 0.2, sampling()).constant, 1.0);
  const auto lb = estimate_local_bilipschitz(m, 0.2, sampling());
  EXPECT_EQ(lb.constant, 1.0);
  ASSERT_FALSE(lb.scale_table.empty());
  for (const auto& [x, cx] : lb.scale_table) EXPECT_EQ(cx, 2.0);
  EXPECT_EQ(estimate_local_quasisymmetry(m, 0.2, sampling()).slope, 1.0);
}

TEST(Automorphism, PartialLipschitzSymmetricAndStable) {
  // f and its inverse are conjugate by z -> -z, so their constants agree once
  // the sampled maximum has converged (300 centres is still too few).
  auto estimate = [](double h) {
    const auto d = qh(ShapeKind::kDisk, h);
    const auto m = MappingPair::from_planar_map(d, d, disk_automorphism({0.5, 0.0}));
    return estimate_partial_bilipschitz(m, 0.1, sampling(1000));
  };
  const auto coarse = estimate(0.02);
  EXPECT_TRUE(std::isfinite(coarse.constant));
  EXPECT_NEAR(coarse.forward.constant / coarse.inverse.constant, 1.0, 0.05);
  EXPECT_NEAR(estimate(0.01).constant / coarse.constant, 1.0, 0.05);
  // The relative estimator reads a subset of the same ratios.
  const auto d = qh(ShapeKind::kDisk, 0.02);
  const auto m = MappingPair::from_planar_map(d, d, disk_automorphism({0.5, 0.0}));
  const double c1 = estimate_relative(m, 0.2, sampling(1000)).constant;
  const double lip = estimate_partial_lipschitz(m, 0.2, sampling(1000)).constant;
  EXPECT_LE(c1, lip * 1.05);
}

TEST(Automorphism, QuasihyperbolicComparableToHyperbolic) {
  // Oracle: rho/2 <= k <= rho for the Poincare metric rho, so an isometry of
  // rho distorts k by at most 2.
  const auto d = qh(ShapeKind::kDisk, 0.01);
  Rng rng(8);
  const auto pairs = sample_pairs(interior_vertices(d->base(), 0.05), 200, rng);
  for (const auto& [x, y] : pairs) {
    const double rho = oracle::hyperbolic_disk(d->base().position(x), d->base().position(y));
    const double k = d->distance(x, y);
    EXPECT_GE(k, rho / 2.0 * 0.97);
    EXPECT_LE(k, rho * 1.03);
  }
  const auto m = MappingPair::from_planar_map(d, d, disk_automorphism({0.5, 0.0}));
  const auto mp = pairs_of(m, 1000);
  EXPECT_LE(estimate_semisolid(m, mp).constant, 2.1);
  EXPECT_LE(estimate_semisolid(m.inverted(), pairs_of(m.inverted(), 1000)).constant, 2.1);
  EXPECT_LE(estimate_qh_bilipschitz(m, mp).constant, 2.1);
  EXPECT_LE(estimate_quasi_isometry(m, mp).multiplicative, 2.1);
}

TEST(Automorphism, CrossRatiosPreserved) {
  const auto d = qh(ShapeKind::kDisk, 0.05);
  const auto m = MappingPair::from_planar_map(d, d, disk_automorphism({0.5, 0.0}));
  Rng rng(10);
  const auto pool = sample_subset(m.mappable(), 40, rng);
  std::vector<PointQuadruple> quads;
  for (int i = 0; i < 500; ++i) quads.push_back({rng.index(40), rng.index(40), rng.index(40), rng.index(40)});
  EXPECT_NEAR(estimate_quasimobius(m, pool, quads).slope, 1.0, 1e-9);
}

TEST(BhkIdentity, BiLipschitzFinite) {
  const auto d = qh(ShapeKind::kDisk, 0.04);
  const BhkSpace b(d, *d->base().nearest_vertex({0, 0}), 0.2);
  const auto target = make_qh_metric(b.as_domain());
  const auto m = MappingPair::vertex_identity(d, target);
  const double M = estimate_qh_bilipschitz(m, pairs_of(m, 300)).constant;
  EXPECT_TRUE(std::isfinite(M));
  EXPECT_GE(M, 1.0);
}

TEST(GlobalHypotheses, DepthRatios) {
  const auto disk = qh(ShapeKind::kDisk, 0.02);
  const auto r = check_global_qs_hypotheses(
      MappingPair::from_planar_map(disk, disk, identity_map()), 1.0, 1.0);
  EXPECT_NEAR(r.c0, 2.0, 1e-12);
  const auto sq = qh(ShapeKind::kSquare, 0.02);
  const auto s = check_global_qs_hypotheses(MappingPair::from_planar_map(sq, sq, identity_map()),
                                            1.0, 1.0);
  EXPECT_NEAR(s.c0, 2.0 * std::numbers::sqrt2, 1e-12);
}

TEST(GlobalHypotheses, LShapeWithinUniformityBound) {
  ShapeSpec l;
  l.kind = ShapeKind::kLShape;
  l.resolution = 0.04;
  const auto k = make_qh_metric(build_grid_domain(l));
  Rng rng(2);
  const auto a = estimate_uniformity(*k, sample_pairs(interior_vertices(k->base()), 150, rng));
  const auto r = check_global_qs_hypotheses(MappingPair::from_planar_map(k, k, identity_map()),
                                            a.constant, a.constant);
  EXPECT_LE(r.c0, 4.0 * a.constant * 1.05);
  EXPECT_TRUE(r.holds);
}

TEST(GlobalHypotheses, UnboundedRejected) {
  const auto hp = qh(ShapeKind::kHalfPlane, 0.2);
  EXPECT_THROW(
      check_global_qs_hypotheses(MappingPair::from_planar_map(hp, hp, identity_map()), 1.0, 1.0),
      ConfigError);
}

}  // namespace
}  // namespace qhgeo
