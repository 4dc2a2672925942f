#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qhgeo/deformations.hpp"
#include "qhgeo/error.hpp"
#include "qhgeo/finite_metric.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo {
namespace {

std::shared_ptr<const QuasihyperbolicMetric> disk_qh(double h) {
  ShapeSpec s;
  s.kind = ShapeKind::kDisk;
  s.resolution = h;
  return make_qh_metric(build_grid_domain(s));
}

VertexId at(const DomainSample& d, double x, double y) { return *d.nearest_vertex({x, y}); }

TEST(BhkDensity, Examples) {
  const auto k = disk_qh(0.01);
  const VertexId w = at(k->base(), 0, 0);
  const VertexId x = at(k->base(), 0.5, 0);
  EXPECT_EQ(bhk_density(*k, w, w, 0.5), 1.0);
  EXPECT_NEAR(bhk_density(*k, x, w, 0.5), 1.0 / std::numbers::sqrt2, 0.02 / std::numbers::sqrt2);
  EXPECT_NEAR(bhk_density(*k, x, w, 1e-9), 1.0, 1e-8);
}

TEST(BhkSpace, RejectsBadParameters) {
  const auto k = disk_qh(0.1);
  EXPECT_THROW(BhkSpace(k, 0, 0.0), ConfigError);
  EXPECT_THROW(BhkSpace(k, 0, 1.0), ConfigError);
  EXPECT_THROW(BhkSpace(k, static_cast<VertexId>(k->base().size()), 0.5), ConfigError);
}

TEST(BhkSpace, MetricAxiomsAndPathBound) {
  const auto k = disk_qh(0.04);
  const BhkSpace b(k, at(k->base(), 0, 0), 0.2);
  Rng rng(3);
  const auto pool = sample_subset(interior_vertices(k->base()), 30, rng);
  std::vector<std::array<std::size_t, 3>> triples;
  for (int i = 0; i < 3000; ++i) triples.push_back({rng.index(30), rng.index(30), rng.index(30)});
  const auto m = FiniteMetric::from_rows(pool, [&](VertexId a) { return b.metric().tree(a)->distance; });
  EXPECT_TRUE(check_metric_axioms(m, triples).ok);
  // Any single path bounds the deformed distance: use the k-geodesic.
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    const auto path = k->geodesic(pool[i], pool[i + 1]);
    double len = 0.0;
    for (std::size_t j = 1; j < path.size(); ++j) {
      const double step = k->distance(path[j - 1], path[j]);
      len += step * (b.density(path[j - 1]) + b.density(path[j])) / 2.0;
    }
    EXPECT_EQ(b.distance(pool[i], pool[i]), 0.0);
    EXPECT_LE(b.distance(pool[i], pool[i + 1]), len + 1e-12);
  }
}

TEST(BhkSpace, DiameterAndBaseDepth) {
  const auto k = disk_qh(0.02);
  const VertexId w = at(k->base(), 0, 0);
  for (double eps : {0.1, 0.2, 0.5}) {
    const BhkSpace b(k, w, eps);
    const auto diam = b.diameter();
    EXPECT_LE(diam.estimate, diam.upper * (1.0 + 1e-12));
    EXPECT_LE(diam.upper, 2.0 / eps * 1.05) << eps;
    EXPECT_GE(b.boundary_distance(w), 1.0 / (eps * std::numbers::e) / 1.05) << eps;
  }
}

TEST(Comparability, SwappedPairsGiveSameRatio) {
  const auto k = disk_qh(0.04);
  const BhkSpace b(k, at(k->base(), 0, 0), 0.2);
  Rng rng(5);
  const auto pairs = sample_pairs(interior_vertices(k->base()), 200, rng);
  std::vector<VertexPair> swapped;
  for (const auto& [x, y] : pairs) swapped.push_back({y, x});
  const auto a = verify_gromov_comparability(b, pairs);
  const auto s = verify_gromov_comparability(b, swapped);
  // Equal up to rounding: the two orders read different shortest-path trees.
  EXPECT_NEAR(a.max_ratio, s.max_ratio, 1e-12 * a.max_ratio);
  EXPECT_NEAR(a.min_ratio, s.min_ratio, 1e-12 * a.min_ratio);
  EXPECT_TRUE(std::isfinite(a.constant));
  EXPECT_GE(a.constant, 1.0);
  const std::vector<VertexPair> same{{3, 3}};
  EXPECT_EQ(verify_gromov_comparability(b, same).skipped, 1u);
}

TEST(Comparability, StableUnderRefinement) {
  auto constant = [](double h) {
    const auto k = disk_qh(h);
    const BhkSpace b(k, at(k->base(), 0, 0), 0.2);
    std::vector<VertexPair> pairs;
    for (int i = 0; i < 8; ++i) {
      const double t = 2.0 * std::numbers::pi * i / 8.0;
      pairs.push_back({at(k->base(), 0.8 * std::cos(t), 0.8 * std::sin(t)),
                       at(k->base(), -0.5 * std::sin(t), 0.5 * std::cos(t))});
    }
    return verify_gromov_comparability(b, pairs).constant;
  };
  const double coarse = constant(0.04);
  const double fine = constant(0.02);
  EXPECT_LT(std::abs(fine / coarse - 1.0), 0.1);
}

TEST(BasepointChange, SameBaseIsExactlyOne) {
  const auto k = disk_qh(0.05);
  const VertexId w0 = at(k->base(), 0, 0);
  const VertexId w1 = at(k->base(), 0.5, 0);
  const BhkSpace a(k, w0, 0.2);
  const BhkSpace a2(k, w0, 0.2);
  const BhkSpace b(k, w1, 0.2);
  Rng rng(7);
  const auto pool = sample_subset(interior_vertices(k->base()), 20, rng);
  std::vector<PointQuadruple> quads;
  for (int i = 0; i < 300; ++i) {
    quads.push_back({rng.index(20), rng.index(20), rng.index(20), rng.index(20)});
  }
  EXPECT_EQ(basepoint_change_distortion(a, a2, pool, quads).slope, 1.0);
  const double forward = basepoint_change_distortion(a, b, pool, quads).slope;
  const double backward = basepoint_change_distortion(b, a, pool, quads).slope;
  EXPECT_TRUE(std::isfinite(forward));
  EXPECT_GE(backward, 1.0 / forward - 1e-12);
}

TEST(Sphericalization, QuasimetricExample) {
  // Pole p = (1, 0) on the unit circle; x, y complete an equilateral triangle
  // of side 1 with p, so the quasimetric is 1 / (2 * 2).
  ShapeSpec sp;
  sp.kind = ShapeKind::kDisk;
  sp.resolution = 0.02;
  const auto d = build_grid_domain(sp);
  const std::size_t pole = nearest_boundary_sample(*d, {1.0, 0.0});
  const Point2 p = d->boundary_positions()[pole];
  const SphericalSpace s(d, pole);
  const VertexId x = *d->nearest_vertex({1.0 - std::sqrt(3.0) / 2.0, 0.5});
  const VertexId y = *d->nearest_vertex({1.0 - std::sqrt(3.0) / 2.0, -0.5});
  const Point2 px = d->position(x);
  const Point2 py = d->position(y);
  EXPECT_DOUBLE_EQ(s.quasimetric(x, y),
                   distance(px, py) / ((1.0 + distance(px, p)) * (1.0 + distance(py, p))));
  EXPECT_NEAR(s.quasimetric(x, y), 0.25, 0.02);  // vertices snap by <= h / sqrt 2
  EXPECT_GE(s.distance(x, y), s.quasimetric(x, y) / 4.0);
  EXPECT_LE(s.distance(x, y), s.quasimetric(x, y));
  EXPECT_EQ(s.distance(x, x), 0.0);
  EXPECT_THROW(SphericalSpace(d, d->boundary_sample_count()), ConfigError);
}

TEST(Sphericalization, NeedsPlanarDomain) {
  GraphImport g;
  g.vertex_count = 3;
  g.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
  g.boundary = {2};
  EXPECT_THROW(SphericalSpace(import_length_graph(g), 0), ConfigError);
}

TEST(Sphericalization, DiameterAtMostOne) {
  ShapeSpec sp;
  sp.kind = ShapeKind::kDisk;
  sp.resolution = 0.1;
  const auto d = build_grid_domain(sp);
  const SphericalSpace s(d, nearest_boundary_sample(*d, {1.0, 0.0}));
  for (VertexId a = 0; a < d->size(); a += 5) {
    for (VertexId b = 0; b < d->size(); b += 3) EXPECT_LE(s.quasimetric(a, b), 1.0);
  }
  EXPECT_LE(s.as_domain()->diameter(), 1.0);
  EXPECT_FALSE(s.has_infinity());
}

TEST(Sphericalization, UnboundedBaseAddsInfinity) {
  ShapeSpec sp;
  sp.kind = ShapeKind::kHalfPlane;
  sp.truncation_radius = 3.0;
  sp.resolution = 0.2;
  const auto d = build_grid_domain(sp);
  const SphericalSpace s(d, nearest_boundary_sample(*d, {0.0, 0.0}));
  EXPECT_TRUE(s.has_infinity());
  const VertexId v = *d->nearest_vertex({0.0, 1.0});
  EXPECT_NEAR(s.to_infinity(v), 1.0 / (1.0 + 1.0), 0.2);
  EXPECT_LE(s.as_domain()->diameter(), 1.0);
}

}  // namespace
}  // namespace qhgeo
