#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qhgeo/cross_ratio.hpp"
#include "qhgeo/mapping.hpp"

namespace qhgeo {

/// Where and how densely balls B(x, r d_G(x)) are probed.
///
/// Ball centres are drawn from the mappable source vertices with `seed`, so
/// estimators run with equal settings see the same centres. Analytic maps are
/// probed at `stencil_points` off-grid points spread over the ball (plus its
/// centre); otherwise the ball's vertices are subsampled to that many.
struct BallSampling {
  std::size_t centres = 1000;
  std::size_t stencil_points = 24;
  std::uint64_t seed = 1;
};

using Triple = std::array<VertexId, 3>;

struct LipschitzEstimate {
  double constant = 1.0;
  std::size_t balls_used = 0;
  std::size_t ratios = 0;
  std::size_t skipped = 0;  // degenerate pairs below the distance guard
  /// Centre x and the two probe indices (0 = centre) attaining the constant.
  std::optional<Triple> witness;
  /// Positions of the centre and the two probes, when embedded.
  std::vector<Point2> witness_points;
};

/// max over centres x and probes y != z in B(x, lambda d_G(x)) of
///   [d'(f y, f z) / d_G'(f x)] / [d(y, z) / d_G(x)].
/// Throws ConfigError when no ball yields a pair (lambda too small for the grid).
LipschitzEstimate estimate_partial_lipschitz(const MappingPair& m, double lambda,
                                             const BallSampling& sampling);

struct BiLipschitzEstimate {
  LipschitzEstimate forward;
  LipschitzEstimate inverse;
  double constant = 1.0;  // max of both directions
};

BiLipschitzEstimate estimate_partial_bilipschitz(const MappingPair& m, double lambda,
                                                 const BallSampling& sampling);

/// Same centres and probes as the partial Lipschitz estimate at lambda = t0,
/// restricted to pairs (x, y) with x the centre.
LipschitzEstimate estimate_relative(const MappingPair& m, double t0,
                                    const BallSampling& sampling);

struct RatioEstimate {
  double constant = 1.0;
  std::size_t pairs_used = 0;
  std::size_t skipped = 0;
  std::optional<VertexPair> witness;
};

/// max over pairs of k'(f x, f y) / k(x, y).
RatioEstimate estimate_semisolid(const MappingPair& m, std::span<const VertexPair> pairs);

/// max over pairs of max(k'/k, k/k').
RatioEstimate estimate_qh_bilipschitz(const MappingPair& m, std::span<const VertexPair> pairs);

struct LocalBiLipschitzEstimate {
  double constant = 1.0;  // L_1
  /// (centre, C_x) with C_x the median of d'(f y, f z) / d(y, z) in the ball.
  std::vector<std::pair<VertexId, double>> scale_table;
  std::size_t balls_used = 0;
  std::size_t skipped = 0;
  std::optional<VertexId> witness;
};

LocalBiLipschitzEstimate estimate_local_bilipschitz(const MappingPair& m, double q,
                                                    const BallSampling& sampling);

struct QuasisymmetryEstimate {
  double slope = 1.0;
  std::size_t triples = 0;
  std::size_t skipped = 0;
  std::optional<VertexId> witness;  // ball centre
};

/// max over balls and distinct probe triples (x, a, b) of
///   [d'(f x, f a) / d'(f x, f b)] / [d(x, a) / d(x, b)].
QuasisymmetryEstimate estimate_local_quasisymmetry(const MappingPair& m, double q,
                                                   const BallSampling& sampling);

struct QuasiIsometryEstimate {
  double multiplicative = 1.0;  // L with C = 0
  double additive = 0.0;        // C with L = 1
  std::size_t pairs_used = 0;
  std::size_t skipped = 0;
};

QuasiIsometryEstimate estimate_quasi_isometry(const MappingPair& m,
                                              std::span<const VertexPair> pairs);

struct StepBoundReport {
  double t1 = 0.0;
  double bound = 0.0;  // before slack
  std::size_t pairs_tested = 0;
  double worst = 0.0;  // largest k'(f x, f y) seen
  std::vector<VertexPair> violations;
};

/// For pairs with k(x, y) <= t1 around sampled centres, checks
/// k'(f x, f y) <= bound * slack.
StepBoundReport verify_qh_step_bound(const MappingPair& m, double t1, double bound,
                                     const BallSampling& sampling, double slack = 1.05);

/// Cross-ratio slope of f over quadruples of pool indices (pool drawn from
/// the mappable vertices). Analytic maps use exact images.
CrossRatioReport estimate_quasimobius(const MappingPair& m, std::span<const VertexId> pool,
                                      std::span<const PointQuadruple> quadruples,
                                      std::size_t scatter_cap = 0);

struct GlobalQsReport {
  VertexId w = kNoVertex;  // deepest source vertex
  Point2 w_position{};
  double c0 = 0.0;  // max(diam / d(w), diam' / d'(f w))
  double source_ratio = 0.0;  // diam / max d_G
  double target_ratio = 0.0;  // diam' / max d_G'
  double source_bound = 0.0;  // 4 A
  double target_bound = 0.0;  // 4 A'
  bool holds = true;          // both ratios within bound * slack
};

/// Diameter-versus-depth hypotheses of the local-to-global quasisymmetry step
/// for bounded spaces. Throws ConfigError when either
/// side is unbounded.
GlobalQsReport check_global_qs_hypotheses(const MappingPair& m, double source_uniformity,
                                          double target_uniformity, double slack = 1.05);

/// 1e-9 times the diameter (twice the truncation radius when unbounded).
double degeneracy_guard(const DomainSample& domain);

}  // namespace qhgeo
