#include "qhgeo/mapping_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhgeo/error.hpp"
#include "qhgeo/finite_metric.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo {

double degeneracy_guard(const DomainSample& domain) {
  double diam = domain.diameter();
  if (!std::isfinite(diam)) {
    diam = domain.spec() ? 2.0 * domain.spec()->truncation_radius : 1.0;
  }
  return 1e-9 * diam;
}

namespace {

struct Probe {
  Point2 point;  // analytic mode
  Point2 image;  // analytic mode
  VertexId vertex = kNoVertex;
  VertexId image_vertex = kNoVertex;
};

struct Ball {
  VertexId centre = kNoVertex;
  double dg = 0.0;
  double dg_image = 0.0;
  std::vector<Probe> probes;  // probes[0] is the centre
};

// Probes balls B(x, r d_G(x)) of a mapping. Every estimator with the same
// sampling settings regenerates identical balls.
class BallProber {
 public:
  BallProber(const MappingPair& m, const BallSampling& sampling)
      : m_(m),
        sampling_(sampling),
        guard_(degeneracy_guard(m.source())),
        guard_image_(degeneracy_guard(m.target())) {
    Rng rng(sampling.seed);
    centres_ = sample_subset(m.mappable(), sampling.centres, rng);
  }

  const std::vector<VertexId>& centres() const { return centres_; }
  double guard() const { return guard_; }
  double guard_image() const { return guard_image_; }

  Ball ball(VertexId x, double factor) const {
    Ball b;
    b.centre = x;
    const DomainSample& src = m_.source();
    const DomainSample& tgt = m_.target();
    if (m_.analytic()) {
      const PlanarMap& f = *m_.map();
      const Point2 c = src.position(x);
      const Point2 fc = f.forward(c);
      b.dg = src.shape()->boundary_distance(c);
      b.dg_image = tgt.shape()->boundary_distance(fc);
      b.probes.push_back({c, fc, x, m_.forward(x)});
      // Sunflower spiral strictly inside the open ball.
      const double radius = factor * b.dg * (1.0 - 1e-9);
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      const std::size_t n = sampling_.stencil_points;
      for (std::size_t i = 1; i <= n; ++i) {
        const double rho = radius * std::sqrt(static_cast<double>(i) / static_cast<double>(n));
        const double phi = golden * static_cast<double>(i);
        const Point2 p = c + Point2{rho * std::cos(phi), rho * std::sin(phi)};
        b.probes.push_back({p, f.forward(p), kNoVertex, kNoVertex});
      }
      return b;
    }
    b.dg = src.boundary_distance(x);
    b.dg_image = tgt.boundary_distance(m_.forward(x));
    b.probes.push_back({{}, {}, x, m_.forward(x)});
    std::vector<VertexId> inside;
    for (VertexId v : src.ambient().open_ball(x, factor * b.dg)) {
      if (v != x && m_.forward(v) != kNoVertex) inside.push_back(v);
    }
    Rng rng(sampling_.seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t{x} + 1)));
    for (VertexId v : sample_subset(inside, sampling_.stencil_points, rng)) {
      b.probes.push_back({{}, {}, v, m_.forward(v)});
    }
    return b;
  }

  Point2 where(const Probe& p) const {
    if (m_.analytic()) return p.point;
    return m_.source().embedded() ? m_.source().position(p.vertex) : Point2{};
  }

  double source_distance(const Probe& a, const Probe& b) const {
    if (m_.analytic()) return distance(a.point, b.point);
    return m_.source().ambient_distance(a.vertex, b.vertex);
  }
  double image_distance(const Probe& a, const Probe& b) const {
    if (m_.analytic()) return distance(a.image, b.image);
    return m_.target().ambient_distance(a.image_vertex, b.image_vertex);
  }

  // Pairwise distances within a ball.
  struct Table {
    std::size_t n = 0;
    std::vector<double> d;
    std::vector<double> d_image;
    bool usable(std::size_t i, std::size_t j) const { return d[i * n + j] > 0.0; }
  };
  Table table(const Ball& b) const {
    Table t;
    t.n = b.probes.size();
    t.d.assign(t.n * t.n, 0.0);
    t.d_image.assign(t.n * t.n, 0.0);
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t j = i + 1; j < t.n; ++j) {
        const double d = source_distance(b.probes[i], b.probes[j]);
        const double di = image_distance(b.probes[i], b.probes[j]);
        // Degenerate pairs are marked with 0 in the source table.
        const bool ok = d >= guard_ && di >= guard_image_;
        t.d[i * t.n + j] = t.d[j * t.n + i] = ok ? d : 0.0;
        t.d_image[i * t.n + j] = t.d_image[j * t.n + i] = di;
      }
    }
    return t;
  }

 private:
  const MappingPair& m_;
  BallSampling sampling_;
  double guard_;
  double guard_image_;
  std::vector<VertexId> centres_;
};

void require_radius(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) throw ConfigError(std::string(what) + " must lie in (0, 1)");
}

LipschitzEstimate ball_lipschitz(const MappingPair& m, double factor,
                                 const BallSampling& sampling, bool centre_only) {
  const BallProber prober(m, sampling);
  LipschitzEstimate out;
  double best = 0.0;
  for (VertexId x : prober.centres()) {
    const Ball b = prober.ball(x, factor);
    const auto t = prober.table(b);
    bool used = false;
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t j = i + 1; j < t.n; ++j) {
        if (centre_only && i != 0) continue;
        if (!t.usable(i, j)) {
          ++out.skipped;
          continue;
        }
        const double ratio =
            (t.d_image[i * t.n + j] / b.dg_image) / (t.d[i * t.n + j] / b.dg);
        ++out.ratios;
        used = true;
        if (ratio > best) {
          best = ratio;
          out.witness = Triple{x, static_cast<VertexId>(i), static_cast<VertexId>(j)};
          out.witness_points = {prober.where(b.probes[0]), prober.where(b.probes[i]),
                                prober.where(b.probes[j])};
        }
      }
    }
    if (used) ++out.balls_used;
  }
  if (out.ratios == 0) {
    throw ConfigError("no usable pair in any ball: increase the radius or refine the grid");
  }
  out.constant = best;
  return out;
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

template <class Visit>
void for_each_qh_pair(const MappingPair& m, std::span<const VertexPair> pairs,
                      std::size_t& skipped, Visit&& visit) {
  for (const VertexPair& p : pairs) {
    const auto [x, y] = p;
    const VertexId fx = m.forward(x);
    const VertexId fy = m.forward(y);
    if (x == y || fx == kNoVertex || fy == kNoVertex || fx == fy) {
      ++skipped;
      continue;
    }
    const double k = m.source_qh().distance(x, y);
    const double k_image = m.target_qh().distance(fx, fy);
    if (!(k > 0.0) || !(k_image > 0.0)) {
      ++skipped;
      continue;
    }
    visit(p, k, k_image);
  }
}

}  // namespace

LipschitzEstimate estimate_partial_lipschitz(const MappingPair& m, double lambda,
                                             const BallSampling& sampling) {
  require_radius(lambda, "lambda");
  return ball_lipschitz(m, lambda, sampling, false);
}

BiLipschitzEstimate estimate_partial_bilipschitz(const MappingPair& m, double lambda,
                                                 const BallSampling& sampling) {
  BiLipschitzEstimate out;
  out.forward = estimate_partial_lipschitz(m, lambda, sampling);
  out.inverse = estimate_partial_lipschitz(m.inverted(), lambda, sampling);
  out.constant = std::max(out.forward.constant, out.inverse.constant);
  return out;
}

LipschitzEstimate estimate_relative(const MappingPair& m, double t0,
                                    const BallSampling& sampling) {
  if (!(t0 > 0.0 && t0 <= 1.0)) throw ConfigError("t0 must lie in (0, 1]");
  return ball_lipschitz(m, t0, sampling, true);
}

RatioEstimate estimate_semisolid(const MappingPair& m, std::span<const VertexPair> pairs) {
  RatioEstimate out;
  double best = 0.0;
  for_each_qh_pair(m, pairs, out.skipped, [&](VertexPair p, double k, double k_image) {
    ++out.pairs_used;
    const double ratio = k_image / k;
    if (ratio > best) {
      best = ratio;
      out.witness = p;
    }
  });
  if (out.pairs_used > 0) out.constant = best;
  return out;
}

RatioEstimate estimate_qh_bilipschitz(const MappingPair& m, std::span<const VertexPair> pairs) {
  RatioEstimate out;
  double best = 0.0;
  for_each_qh_pair(m, pairs, out.skipped, [&](VertexPair p, double k, double k_image) {
    ++out.pairs_used;
    const double ratio = std::max(k_image / k, k / k_image);
    if (ratio > best) {
      best = ratio;
      out.witness = p;
    }
  });
  if (out.pairs_used > 0) out.constant = best;
  return out;
}

LocalBiLipschitzEstimate estimate_local_bilipschitz(const MappingPair& m, double q,
                                                    const BallSampling& sampling) {
  require_radius(q, "q");
  const BallProber prober(m, sampling);
  LocalBiLipschitzEstimate out;
  double best = 0.0;
  for (VertexId x : prober.centres()) {
    const Ball b = prober.ball(x, q);
    const auto t = prober.table(b);
    std::vector<double> ratios;
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t j = i + 1; j < t.n; ++j) {
        if (!t.usable(i, j)) {
          ++out.skipped;
          continue;
        }
        ratios.push_back(t.d_image[i * t.n + j] / t.d[i * t.n + j]);
      }
    }
    if (ratios.empty()) continue;
    ++out.balls_used;
    const double cx = median(ratios);
    out.scale_table.emplace_back(x, cx);
    for (double r : ratios) {
      const double spread = std::max(r / cx, cx / r);
      if (spread > best) {
        best = spread;
        out.witness = x;
      }
    }
  }
  if (out.balls_used == 0) {
    throw ConfigError("no usable pair in any ball: increase q or refine the grid");
  }
  out.constant = best;
  return out;
}

QuasisymmetryEstimate estimate_local_quasisymmetry(const MappingPair& m, double q,
                                                   const BallSampling& sampling) {
  require_radius(q, "q");
  const BallProber prober(m, sampling);
  QuasisymmetryEstimate out;
  double best = 0.0;
  for (VertexId x : prober.centres()) {
    const Ball b = prober.ball(x, q);
    const auto t = prober.table(b);
    for (std::size_t i = 0; i < t.n; ++i) {
      for (std::size_t a = 0; a < t.n; ++a) {
        if (a == i) continue;
        for (std::size_t c = 0; c < t.n; ++c) {
          if (c == i || c == a) continue;
          if (!t.usable(i, a) || !t.usable(i, c)) {
            ++out.skipped;
            continue;
          }
          const double ratio = (t.d_image[i * t.n + a] / t.d_image[i * t.n + c]) /
                               (t.d[i * t.n + a] / t.d[i * t.n + c]);
          ++out.triples;
          if (ratio > best) {
            best = ratio;
            out.witness = x;
          }
        }
      }
    }
  }
  if (out.triples == 0) {
    throw ConfigError("no usable triple in any ball: increase q or refine the grid");
  }
  out.slope = best;
  return out;
}

QuasiIsometryEstimate estimate_quasi_isometry(const MappingPair& m,
                                              std::span<const VertexPair> pairs) {
  QuasiIsometryEstimate out;
  for_each_qh_pair(m, pairs, out.skipped, [&](VertexPair, double k, double k_image) {
    ++out.pairs_used;
    out.multiplicative = std::max({out.multiplicative, k_image / k, k / k_image});
    out.additive = std::max(out.additive, std::abs(k_image - k));
  });
  return out;
}

StepBoundReport verify_qh_step_bound(const MappingPair& m, double t1, double bound,
                                     const BallSampling& sampling, double slack) {
  if (!(t1 > 0.0) || !(bound > 0.0)) throw ConfigError("step bound needs t1 > 0 and bound > 0");
  StepBoundReport out;
  out.t1 = t1;
  out.bound = bound;
  Rng rng(sampling.seed);
  const std::vector<VertexId> centres = sample_subset(m.mappable(), sampling.centres, rng);
  const double limit = 2.0 * bound * slack;
  for (VertexId x : centres) {
    const VertexId fx = m.forward(x);
    for (const auto& [y, k] : graph_ball(m.source_qh().graph(), x, t1)) {
      const VertexId fy = m.forward(y);
      if (y == x || fy == kNoVertex) continue;
      ++out.pairs_tested;
      const double k_image =
          fx == fy ? 0.0 : bounded_distance(m.target_qh().graph(), fx, fy, limit);
      out.worst = std::max(out.worst, k_image);
      if (k_image > bound * slack) out.violations.emplace_back(x, y);
    }
  }
  return out;
}

CrossRatioReport estimate_quasimobius(const MappingPair& m, std::span<const VertexId> pool,
                                      std::span<const PointQuadruple> quadruples,
                                      std::size_t scatter_cap) {
  const double g0 = degeneracy_guard(m.source());
  const double g1 = degeneracy_guard(m.target());
  if (m.analytic()) {
    std::vector<Point2> points;
    std::vector<Point2> images;
    for (VertexId v : pool) {
      points.push_back(m.source().position(v));
      images.push_back(m.map()->forward(points.back()));
    }
    auto d0 = [&](std::size_t i, std::size_t j) { return distance(points[i], points[j]); };
    auto d1 = [&](std::size_t i, std::size_t j) { return distance(images[i], images[j]); };
    return cross_ratio_distortion(d0, d1, quadruples, g0, g1, scatter_cap);
  }
  std::vector<VertexId> sources(pool.begin(), pool.end());
  std::vector<VertexId> targets;
  for (VertexId v : pool) {
    if (m.forward(v) == kNoVertex) throw ConfigError("quadruple pool vertex is not mappable");
    targets.push_back(m.forward(v));
  }
  const FiniteMetric d0 = FiniteMetric::from_rows(
      std::move(sources), [&](VertexId v) { return m.source().ambient().row(v); });
  // Images may repeat, so the target table is filled pairwise.
  const FiniteMetric d1 = FiniteMetric::tabulate(
      std::vector<VertexId>(pool.begin(), pool.end()),
      [&](VertexId a, VertexId b) { return m.target().ambient_distance(m.forward(a), m.forward(b)); });
  return cross_ratio_distortion(d0, d1, quadruples, g0, g1, scatter_cap);
}

GlobalQsReport check_global_qs_hypotheses(const MappingPair& m, double source_uniformity,
                                          double target_uniformity, double slack) {
  const DomainSample& src = m.source();
  const DomainSample& tgt = m.target();
  if (!src.bounded() || !tgt.bounded()) {
    throw ConfigError("global quasisymmetry hypotheses need bounded spaces; sphericalize first");
  }
  GlobalQsReport out;
  out.w = src.deepest_vertex();
  double dg_image = 0.0;
  if (m.analytic()) {
    out.w_position = src.position(out.w);
    dg_image = tgt.shape()->boundary_distance(m.map()->forward(out.w_position));
  } else {
    if (src.embedded()) out.w_position = src.position(out.w);
    if (m.forward(out.w) == kNoVertex) throw ConfigError("deepest vertex has no image");
    dg_image = tgt.boundary_distance(m.forward(out.w));
  }
  const double diam = src.diameter();
  const double diam_image = tgt.diameter();
  out.c0 = std::max(diam / src.boundary_distance(out.w), diam_image / dg_image);
  out.source_ratio = diam / src.boundary_distance(src.deepest_vertex());
  out.target_ratio = diam_image / tgt.boundary_distance(tgt.deepest_vertex());
  out.source_bound = 4.0 * source_uniformity;
  out.target_bound = 4.0 * target_uniformity;
  out.holds = out.source_ratio <= out.source_bound * slack &&
              out.target_ratio <= out.target_bound * slack;
  return out;
}

}  // namespace qhgeo
