#include "verifier/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "qhgeo/constants.hpp"
#include "qhgeo/error.hpp"
#include "qhgeo/finite_metric.hpp"
#include "qhgeo/hyperbolicity.hpp"
#include "qhgeo/mapping_analysis.hpp"
#include "qhgeo/sampling.hpp"

namespace qhgeo::verifier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kWitnessCap = 10;

// ---------------------------------------------------------------- params

ParamSpec real(const char* name, Json fallback, double lo = -kInf, double hi = kInf,
               bool lo_open = false, bool hi_open = false) {
  ParamSpec p;
  p.name = name;
  p.type = ParamType::kReal;
  p.fallback = std::move(fallback);
  p.lo = lo;
  p.hi = hi;
  p.lo_open = lo_open;
  p.hi_open = hi_open;
  return p;
}
ParamSpec unit_open(const char* name, Json fallback) {
  return real(name, std::move(fallback), 0.0, 1.0, true, true);
}
ParamSpec positive(const char* name, Json fallback) {
  return real(name, std::move(fallback), 0.0, kInf, true, false);
}
ParamSpec count(const char* name, std::uint64_t fallback) {
  ParamSpec p;
  p.name = name;
  p.type = ParamType::kCount;
  p.fallback = fallback;
  return p;
}
ParamSpec point(const char* name, Json fallback, bool required = true) {
  ParamSpec p;
  p.name = name;
  p.type = ParamType::kPoint;
  p.required = required && fallback.is_null();
  p.fallback = std::move(fallback);
  return p;
}
ParamSpec flag(const char* name, bool fallback) {
  ParamSpec p;
  p.name = name;
  p.type = ParamType::kBool;
  p.fallback = fallback;
  return p;
}
ParamSpec ref(const char* name, ParamType type, bool required = true) {
  ParamSpec p;
  p.name = name;
  p.type = type;
  p.required = required;
  return p;
}
ParamSpec slack_param() { return positive("slack", nullptr); }

const std::map<std::string, std::vector<ParamSpec>, std::less<>>& param_table() {
  using T = ParamType;
  static const std::map<std::string, std::vector<ParamSpec>, std::less<>> table = {
      {"metric_axioms",
       {ref("space", T::kSpace), count("triples", 10000), count("pool", 64),
        positive("tolerance", 1e-12)}},
      {"quasiconvexity",
       {ref("space", T::kSpace), count("pairs", 10000), real("max", nullptr, 1.0)}},
      {"ball_containment",
       {ref("space", T::kSpace), count("centres", 100), positive("radius_factor", 1.0)}},
      {"qh_calibration",
       {ref("space", T::kSpace), point("from", nullptr), point("to", nullptr),
        positive("tolerance", 0.02), flag("refine", true)}},
      {"qh_distance_bounds", {ref("space", T::kSpace), count("pairs", 10000), slack_param()}},
      {"uniformity", {ref("space", T::kSpace), count("pairs", 200), real("max", nullptr, 1.0)}},
      {"basepoint_identity",
       {ref("space", T::kSpace), count("tuples", 100000), count("pool", 32),
        positive("tolerance", 1e-12)}},
      {"hyperbolicity",
       {ref("space", T::kSpace), count("quadruples", 10000), count("pool", 200),
        flag("refine", false), positive("drift", 0.1), point("base", nullptr, false)}},
      {"bhk_diameter_bound",
       {ref("deformation", T::kDeformation), count("sweeps", 8), slack_param()}},
      {"bhk_comparability",
       {ref("deformation", T::kDeformation), count("pairs", 1000), flag("refine", true),
        positive("drift", 0.1)}},
      {"basepoint_change",
       {ref("space", T::kSpace), unit_open("epsilon", 0.2), point("from", Json::array({0.0, 0.0})),
        point("to", Json::array({0.5, 0.0})), count("quadruples", 1000), count("pool", 64),
        count("growth", 10), positive("drift", 0.1)}},
      {"sphericalization_quasimobius",
       {ref("deformation", T::kDeformation), count("quadruples", 1000), count("pool", 96),
        count("pairs", 1000), count("uniformity_pairs", 200), slack_param()}},
      {"relative_semisolid_chain",
       {ref("mapping", T::kMapping), unit_open("lambda", 0.5), real("c", 1.0, 1.0),
        count("centres", 1000), count("probes", 24), count("pairs", 10000), slack_param()}},
      {"local_distortion_chain",
       {ref("mapping", T::kMapping), real("t0", 0.5, 0.0, 1.0, true, false), real("c", 1.0, 1.0),
        count("centres", 1000), count("probes", 24), count("pairs", 10000), slack_param()}},
      {"qh_step_bound",
       {ref("mapping", T::kMapping), unit_open("q", 0.5), count("centres", 1000),
        count("probes", 24), count("uniformity_pairs", 200), real("uniformity", nullptr, 1.0),
        positive("eta_slope", nullptr), slack_param()}},
      {"global_qs_hypotheses",
       {ref("mapping", T::kMapping), count("uniformity_pairs", 200),
        point("source_pole", Json::array({0.0, 0.0})),
        point("target_pole", Json::array({0.0, 0.0})), flag("sensitivity", true),
        positive("sensitivity_tolerance", 0.01), slack_param()}},
      {"quasimobius_envelope",
       {ref("mapping", T::kMapping), count("quadruples", 1000), count("pool", 2000),
        count("growth", 10), positive("drift", 0.05), flag("exact", false),
        positive("exact_tolerance", 1e-9)}},
      {"neutral_estimators",
       {ref("mapping", T::kMapping), ref("reference", T::kMapping, false), positive("scale", 1.0),
        unit_open("lambda", 0.2), unit_open("q", 0.2), count("centres", 200), count("probes", 24),
        count("pairs", 2000), count("quadruples", 1000)}},
  };
  return table;
}

// --------------------------------------------------------------- helpers

double num(const Json& params, const char* key) { return params.at(key).get<double>(); }
std::size_t cnt(const Json& params, const char* key) {
  return params.at(key).get<std::size_t>();
}
Point2 pt(const Json& params, const char* key) {
  const Json& v = params.at(key);
  return {v[0].get<double>(), v[1].get<double>()};
}
double slack_of(const Json& params, const CheckContext& ctx) {
  return params.contains("slack") ? num(params, "slack") : ctx.slack;
}

Rng sub_rng(const CheckContext& ctx, std::uint64_t tag) {
  return Rng(ctx.seed ^ (0xd1b54a32d192ed03ULL * (tag + 1)));
}

Json vertex_json(const DomainSample& d, VertexId v) {
  Json j;
  j["vertex"] = v;
  if (d.embedded()) j["position"] = {d.position(v).x, d.position(v).y};
  return j;
}

Json pair_json(const DomainSample& d, VertexPair p) {
  return Json::array({vertex_json(d, p.first), vertex_json(d, p.second)});
}

VertexId snap(const DomainSample& d, Point2 p, const char* what) {
  if (!d.embedded()) throw ConfigError(std::string(what) + " needs an embedded space");
  const auto v = d.nearest_vertex(p);
  if (!v) throw ConfigError(std::string(what) + " is not near any vertex");
  return *v;
}

BallSampling ball_sampling(const Json& params, const CheckContext& ctx) {
  BallSampling s;
  s.centres = cnt(params, "centres");
  s.stencil_points = cnt(params, "probes");
  s.seed = ctx.seed;
  return s;
}

std::vector<PointQuadruple> index_quadruples(std::size_t pool, std::size_t count, Rng& rng) {
  if (pool < 4) throw ConfigError("quadruple pool needs at least 4 points");
  std::vector<VertexId> ids(pool);
  for (std::size_t i = 0; i < pool; ++i) ids[i] = static_cast<VertexId>(i);
  std::vector<PointQuadruple> out;
  for (const Quadruple& q : sample_quadruples(ids, count, rng)) {
    out.push_back({q[0], q[1], q[2], q[3]});
  }
  return out;
}

double relative_change(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(b - a) / std::max(std::abs(a), std::abs(b));
}

void fail_with(CheckOutcome& out, Json witness) {
  out.status = CheckOutcome::Status::kFail;
  if (out.witnesses.size() < kWitnessCap) out.witnesses.push_back(std::move(witness));
}

double clamp_one(double x) { return std::max(1.0, x); }

Json ledger_json(const ConstantsLedger& l) {
  Json j;
  j["step"] = l.step;
  for (const auto& [k, v] : l.inputs) j["inputs"][k] = v;
  for (const auto& [k, v] : l.derived) j["derived"][k] = v;
  return j;
}

Json lipschitz_witness(const DomainSample& d, const LipschitzEstimate& e, const char* what) {
  Json j;
  j["estimate"] = what;
  if (e.witness) j["centre"] = vertex_json(d, (*e.witness)[0]);
  Json pts = Json::array();
  for (Point2 p : e.witness_points) pts.push_back({p.x, p.y});
  j["points"] = pts;
  return j;
}

// ---------------------------------------------------------------- checks

using Metric = std::function<std::vector<double>(VertexId)>;

std::vector<std::pair<std::string, Metric>> space_metrics(const Space& s) {
  const DomainSample& d = *s.domain;
  const QuasihyperbolicMetric& k = *s.qh;
  return {
      {"ambient", [&d](VertexId v) { return d.ambient().row(v); }},
      {"graph", [&d](VertexId v) { return d.length_metric().tree(v)->distance; }},
      {"qh", [&k](VertexId v) { return k.metric().tree(v)->distance; }},
  };
}

CheckOutcome metric_axioms(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  const DomainSample& d = *s.domain;
  Rng rng = sub_rng(ctx, 0);
  const auto all = interior_vertices(d);
  const std::vector<VertexId> pool = sample_subset(all, cnt(p, "pool"), rng);
  if (pool.size() < 3) throw ConfigError("metric axiom check needs at least 3 vertices");
  std::vector<std::array<std::size_t, 3>> triples;
  const std::size_t n = cnt(p, "triples");
  for (std::size_t i = 0; i < n; ++i) {
    triples.push_back({rng.index(pool.size()), rng.index(pool.size()), rng.index(pool.size())});
  }
  const double tol = num(p, "tolerance");
  for (const auto& [name, row] : space_metrics(s)) {
    const FiniteMetric m = FiniteMetric::from_rows(pool, row);
    const MetricAxiomReport r = check_metric_axioms(m, triples, tol);
    out.measured[name + "_worst_symmetry"] = r.worst_symmetry;
    out.measured[name + "_worst_triangle"] = r.worst_triangle;
    out.measured[name + "_worst_identity"] = r.worst_identity;
    out.diagnostics["triples_checked"] = r.triples_checked;
    if (!r.ok) {
      Json w;
      w["metric"] = name;
      for (std::size_t i : *r.witness) w["triple"].push_back(vertex_json(d, pool[i]));
      fail_with(out, w);
    }
  }
  out.predicted["tolerance"] = tol;
  return out;
}

CheckOutcome quasiconvexity(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const DomainSample& d = *ws.space(p.at("space")).domain;
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = sample_pairs(interior_vertices(d), cnt(p, "pairs"), rng);
  const QuasiconvexityEstimate e = estimate_quasiconvexity(d, pairs);
  out.measured["c"] = e.c;
  out.skipped = e.skipped;
  out.diagnostics["pairs_used"] = e.pairs_used;
  if (p.contains("max")) out.predicted["c"] = num(p, "max");
  const bool ok = e.c >= 1.0 - 1e-12 && (!p.contains("max") || e.c <= num(p, "max"));
  if (!ok) fail_with(out, pair_json(d, e.worst));
  return out;
}

CheckOutcome ball_containment(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const DomainSample& d = *ws.space(p.at("space")).domain;
  Rng rng = sub_rng(ctx, 0);
  const auto centres = sample_subset(interior_vertices(d), cnt(p, "centres"), rng);
  const double factor = num(p, "radius_factor");
  std::size_t failures = 0;
  std::size_t samples = 0;
  for (VertexId x : centres) {
    const double r = factor * guaranteed_ball_radius(d, x);
    const BallContainmentReport rep = check_ball_containment(d, x, r);
    samples += rep.samples_checked;
    if (rep.contained) continue;
    ++failures;
    Json w;
    w["centre"] = vertex_json(d, x);
    w["radius"] = r;
    if (rep.first_violation) w["outside_point"] = {rep.first_violation->x, rep.first_violation->y};
    if (rep.first_violating_sample) w["outside_sample"] = *rep.first_violating_sample;
    fail_with(out, w);
  }
  out.measured["centres_failed"] = failures;
  out.predicted["centres_failed"] = 0;
  out.diagnostics["centres"] = centres.size();
  out.diagnostics["samples_checked"] = samples;
  out.diagnostics["radius_factor"] = factor;
  return out;
}

// Closed-form k between two vertices for the kinds whose geodesics are known.
double calibration_oracle(const DomainSample& d, Point2 a, Point2 b) {
  const ShapeSpec& s = *d.spec();
  switch (s.kind) {
    case ShapeKind::kDisk:
      return std::abs(std::log((s.radius - norm(a)) / (s.radius - norm(b))));
    case ShapeKind::kHalfPlane:
      return std::abs(std::log(b.y / a.y));
    case ShapeKind::kPuncturedPlane:
      return std::abs(std::log(norm(b) / norm(a)));
    default:
      throw ConfigError("qh_calibration has no closed form for shape " +
                        std::string(to_string(s.kind)));
  }
}

CheckOutcome qh_calibration(const Json& p, const Workspace& ws, const CheckContext&) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  if (s.deformation || !s.domain->spec()) throw ConfigError("qh_calibration needs a grid domain");
  const double tol = num(p, "tolerance");
  auto measure = [&](const DomainSample& d, const QuasihyperbolicMetric& k, const char* tag) {
    const VertexId a = snap(d, pt(p, "from"), "from");
    const VertexId b = snap(d, pt(p, "to"), "to");
    const double expected = calibration_oracle(d, d.position(a), d.position(b));
    const double got = k.distance(a, b);
    const double err = std::abs(got - expected) / expected;
    out.measured[std::string("k_") + tag] = got;
    out.predicted[std::string("k_") + tag] = expected;
    out.measured[std::string("relative_error_") + tag] = err;
    out.diagnostics[std::string("resolution_") + tag] = d.resolution();
    return std::pair{err, Json::array({vertex_json(d, a), vertex_json(d, b)})};
  };
  const auto [err, witness] = measure(*s.domain, *s.qh, "h");
  out.predicted["relative_error_h"] = tol;
  if (err > tol) fail_with(out, witness);
  if (p.at("refine").get<bool>()) {
    const auto fine = build_domain(*s.origin, 0.5);
    const auto kf = make_qh_metric(fine);
    const auto [err_fine, witness_fine] = measure(*fine, *kf, "h_half");
    out.predicted["relative_error_h_half"] = err;
    if (err_fine > err && err_fine > 1e-12) fail_with(out, witness_fine);
  }
  return out;
}

CheckOutcome qh_distance_bounds(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  const DomainSample& d = *s.domain;
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = sample_pairs(interior_vertices(d), cnt(p, "pairs"), rng);
  const double slack = slack_of(p, ctx);
  const DistanceBoundReport r = verify_distance_bounds(*s.qh, pairs, slack);
  out.measured["violations"] = r.violations.size();
  out.predicted["violations"] = 0;
  out.measured["worst_exponential"] = r.worst_exponential;
  out.measured["worst_local_lower"] = r.worst_local_lower;
  out.measured["worst_local_upper"] = r.worst_local_upper;
  out.predicted["worst_exponential"] = slack;
  out.predicted["worst_local_lower"] = slack;
  out.predicted["worst_local_upper"] = slack;
  out.diagnostics["pairs_checked"] = r.pairs_checked;
  out.diagnostics["local_pairs"] = r.local_pairs;
  out.diagnostics["slack"] = slack;
  static constexpr const char* kNames[] = {"exponential", "local_lower", "local_upper"};
  for (const DistanceBoundViolation& v : r.violations) {
    Json w;
    w["bound"] = kNames[static_cast<int>(v.bound)];
    w["pair"] = pair_json(d, v.pair);
    w["lhs"] = v.lhs;
    w["rhs"] = v.rhs;
    fail_with(out, w);
  }
  return out;
}

CheckOutcome uniformity(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = sample_pairs(interior_vertices(*s.domain), cnt(p, "pairs"), rng);
  const UniformityReport r = estimate_uniformity(*s.qh, pairs);
  out.measured["A"] = r.constant;
  out.skipped = r.skipped;
  double length = 1.0;
  double cigar = 0.0;
  for (const UniformityEntry& e : r.entries) {
    length = std::max(length, e.length_ratio);
    cigar = std::max(cigar, e.cigar_ratio);
  }
  out.diagnostics["max_length_ratio"] = length;
  out.diagnostics["max_cigar_ratio"] = cigar;
  out.diagnostics["pairs_used"] = r.entries.size();
  if (p.contains("max")) {
    out.predicted["A"] = num(p, "max");
    if (r.constant > num(p, "max")) fail_with(out, pair_json(*s.domain, *r.worst_pair));
  }
  return out;
}

CheckOutcome basepoint_identity(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  Rng rng = sub_rng(ctx, 0);
  const auto pool = sample_subset(interior_vertices(*s.domain), cnt(p, "pool"), rng);
  const std::size_t tuples = cnt(p, "tuples");
  const double tol = num(p, "tolerance");
  std::vector<std::array<std::size_t, 6>> draws(tuples);
  for (auto& t : draws) {
    for (auto& i : t) i = rng.index(pool.size());
  }
  for (const auto& [name, row] : space_metrics(s)) {
    const FiniteMetric m = FiniteMetric::from_rows(pool, row);
    double worst = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const auto& t = draws[i];
      const double r = basepoint_identity_residual(m, t[0], t[1], t[2], t[3], t[4], t[5]);
      if (r > worst) {
        worst = r;
        worst_at = i;
      }
    }
    out.measured[name + "_max_residual"] = worst;
    out.predicted[name + "_max_residual"] = tol;
    if (worst > tol) {
      Json w;
      w["metric"] = name;
      for (std::size_t i : draws[worst_at]) w["tuple"].push_back(vertex_json(*s.domain, pool[i]));
      fail_with(out, w);
    }
  }
  out.diagnostics["tuples"] = tuples;
  return out;
}

CheckOutcome hyperbolicity(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  const DomainSample& d = *s.domain;
  Rng rng = sub_rng(ctx, 0);
  const auto pool = sample_subset(interior_vertices(d), cnt(p, "pool"), rng);
  const auto quads = index_quadruples(pool.size(), cnt(p, "quadruples"), rng);
  auto delta_on = [&](const QuasihyperbolicMetric& k, const std::vector<VertexId>& points) {
    const FiniteMetric m = FiniteMetric::from_rows(
        points, [&](VertexId v) { return k.metric().tree(v)->distance; });
    return estimate_delta(m, quads);
  };
  const HyperbolicityReport r = delta_on(*s.qh, pool);
  out.measured["delta"] = r.delta;
  out.diagnostics["quadruples_tested"] = r.quadruples_tested;
  const VertexId w = p.contains("base") ? snap(d, pt(p, "base"), "base") : d.deepest_vertex();
  const StarlikenessReport star = estimate_rough_starlikeness(*s.qh, w);
  out.measured["starlikeness_K"] = star.constant;
  out.diagnostics["base_point"] = vertex_json(d, w);
  out.diagnostics["geodesics"] = star.geodesics;
  if (!std::isfinite(r.delta) || !std::isfinite(star.constant)) {
    fail_with(out, {{"reason", "non-finite value"}});
  }
  if (p.at("refine").get<bool>()) {
    if (s.deformation) throw ConfigError("hyperbolicity refinement needs an undeformed domain");
    const auto fine = build_domain(*s.origin, 0.5);
    const auto kf = make_qh_metric(fine);
    std::vector<VertexId> fine_pool;
    for (VertexId v : pool) fine_pool.push_back(snap(*fine, d.position(v), "pool point"));
    const HyperbolicityReport rf = delta_on(*kf, fine_pool);
    const double drift = relative_change(r.delta, rf.delta);
    out.measured["delta_h_half"] = rf.delta;
    out.measured["refinement_drift"] = drift;
    out.predicted["refinement_drift"] = num(p, "drift");
    if (drift >= num(p, "drift")) {
      Json wj;
      if (r.witness) {
        for (std::size_t i : *r.witness) wj["quadruple"].push_back(vertex_json(d, pool[i]));
      }
      wj["delta_h"] = r.delta;
      wj["delta_h_half"] = rf.delta;
      fail_with(out, wj);
    }
  }
  return out;
}

const Space& bhk_space(const Json& p, const Workspace& ws) {
  const Space& s = ws.space(p.at("deformation"));
  if (!s.bhk) throw ConfigError("deformation " + s.name + " is not a bhk deformation");
  return s;
}

CheckOutcome bhk_diameter_bound(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = bhk_space(p, ws);
  const BhkSpace& b = *s.bhk;
  const double eps = b.epsilon();
  const double slack = slack_of(p, ctx);
  const DiameterEstimate diam = b.diameter(cnt(p, "sweeps"));
  const VertexId w = b.base_point();
  const double bd = b.boundary_distance(w);
  out.measured["diameter_estimate"] = diam.estimate;
  out.measured["diameter_upper"] = diam.upper;
  out.predicted["diameter_upper"] = 2.0 / eps;
  out.measured["base_boundary_distance"] = bd;
  out.predicted["base_boundary_distance"] = 1.0 / (eps * std::numbers::e);
  out.diagnostics["epsilon"] = eps;
  out.diagnostics["slack"] = slack;
  if (diam.upper > 2.0 / eps * slack) {
    fail_with(out, {{"diameter_pair", pair_json(*s.domain, diam.witness)},
                    {"base_point", vertex_json(*s.domain, w)}});
  }
  if (bd < 1.0 / (eps * std::numbers::e) / slack) {
    fail_with(out, {{"base_point", vertex_json(*s.domain, w)}, {"boundary_distance", bd}});
  }
  return out;
}

CheckOutcome bhk_comparability(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = bhk_space(p, ws);
  const DomainSample& d = *s.domain;
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = sample_pairs(interior_vertices(d), cnt(p, "pairs"), rng);
  const ComparabilityReport r = verify_gromov_comparability(*s.bhk, pairs);
  out.measured["C"] = r.constant;
  out.diagnostics["max_ratio"] = r.max_ratio;
  out.diagnostics["min_ratio"] = r.min_ratio;
  out.diagnostics["pairs_used"] = r.pairs_used;
  out.skipped = r.skipped;
  if (!std::isfinite(r.constant)) fail_with(out, pair_json(d, *r.witness));
  if (p.at("refine").get<bool>()) {
    const auto fine = build_domain(*s.origin, 0.5);
    const auto kf = make_qh_metric(fine);
    const DomainSample& base = s.bhk->qh().base();
    const BhkSpace bf(kf, snap(*fine, base.position(s.bhk->base_point()), "base point"),
                      s.bhk->epsilon());
    std::vector<VertexPair> fine_pairs;
    for (const auto& [a, b] : pairs) {
      fine_pairs.emplace_back(snap(*fine, base.position(a), "pair point"),
                              snap(*fine, base.position(b), "pair point"));
    }
    const ComparabilityReport rf = verify_gromov_comparability(bf, fine_pairs);
    const double drift = relative_change(r.constant, rf.constant);
    out.measured["C_h_half"] = rf.constant;
    out.measured["refinement_drift"] = drift;
    out.predicted["refinement_drift"] = num(p, "drift");
    if (!(drift < num(p, "drift"))) {
      Json w;
      if (r.witness) w["coarse_witness"] = pair_json(d, *r.witness);
      if (rf.witness) w["fine_witness"] = pair_json(*fine, *rf.witness);
      fail_with(out, w);
    }
  }
  return out;
}

CheckOutcome basepoint_change(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("space"));
  if (s.deformation) throw ConfigError("basepoint_change needs an undeformed domain");
  const DomainSample& d = *s.domain;
  const double eps = num(p, "epsilon");
  const BhkSpace from(s.qh, snap(d, pt(p, "from"), "from"), eps);
  const BhkSpace to(s.qh, snap(d, pt(p, "to"), "to"), eps);
  Rng rng = sub_rng(ctx, 0);
  const auto pool = sample_subset(interior_vertices(d), cnt(p, "pool"), rng);
  const std::size_t n = cnt(p, "quadruples");
  const auto quads = index_quadruples(pool.size(), n * cnt(p, "growth"), rng);
  const std::span<const PointQuadruple> first(quads.data(), std::min(n, quads.size()));
  const CrossRatioReport r = basepoint_change_distortion(from, to, pool, first);
  const CrossRatioReport back = basepoint_change_distortion(to, from, pool, first);
  const CrossRatioReport grown = basepoint_change_distortion(from, to, pool, quads);
  const double drift = relative_change(r.slope, grown.slope);
  out.measured["slope"] = r.slope;
  out.measured["reverse_slope"] = back.slope;
  out.measured["slope_grown"] = grown.slope;
  out.measured["growth_drift"] = drift;
  out.predicted["growth_drift"] = num(p, "drift");
  out.skipped = r.skipped;
  out.diagnostics["quadruples_tested"] = r.tested;
  out.diagnostics["grown_quadruples_tested"] = grown.tested;
  auto witness = [&](const CrossRatioReport& c) {
    Json w = Json::array();
    if (c.witness) {
      for (std::size_t i : *c.witness) w.push_back(vertex_json(d, pool[i]));
    }
    return w;
  };
  if (!std::isfinite(r.slope) || r.slope * back.slope < 1.0 - 1e-12) {
    fail_with(out, {{"quadruple", witness(r)}});
  }
  if (!(drift < num(p, "drift"))) fail_with(out, {{"quadruple", witness(grown)}});
  return out;
}

CheckOutcome sphericalization_quasimobius(const Json& p, const Workspace& ws,
                                          const CheckContext& ctx) {
  CheckOutcome out;
  const Space& s = ws.space(p.at("deformation"));
  if (!s.sphere) throw ConfigError("deformation " + s.name + " is not a sphericalization");
  const SphericalSpace& sph = *s.sphere;
  const Space& base_space = ws.space(s.deformation->domain);
  const DomainSample& base = *base_space.domain;
  const double slack = slack_of(p, ctx);
  Rng rng = sub_rng(ctx, 0);
  const auto pool = sample_subset(interior_vertices(base), cnt(p, "pool"), rng);
  const auto quads = index_quadruples(pool.size(), cnt(p, "quadruples"), rng);
  const FiniteMetric d0 =
      FiniteMetric::from_rows(pool, [&](VertexId v) { return base.ambient().row(v); });
  const FiniteMetric d1 = FiniteMetric::from_rows(pool, [&](VertexId v) { return *sph.row(v); });
  const CrossRatioReport cr = cross_ratio_distortion(d0, d1, quads, degeneracy_guard(base),
                                                     degeneracy_guard(*s.domain));
  out.measured["quasimobius_slope"] = cr.slope;
  out.predicted["quasimobius_slope"] = 16.0;
  out.skipped = cr.skipped;
  out.diagnostics["quadruples_tested"] = cr.tested;
  if (cr.slope > 16.0 * slack) {
    Json w = Json::array();
    for (std::size_t i : *cr.witness) w.push_back(vertex_json(base, pool[i]));
    fail_with(out, {{"quadruple", w}});
  }

  // The chain metric against its quasimetric: s/4 <= chain <= s.
  double lo = kInf;
  double hi = 0.0;
  VertexPair lo_at{};
  VertexPair hi_at{};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const double q = sph.quasimetric(pool[i], pool[j]);
      if (!(q > 0.0)) continue;
      const double ratio = d1(i, j) / q;
      if (ratio < lo) {
        lo = ratio;
        lo_at = {pool[i], pool[j]};
      }
      if (ratio > hi) {
        hi = ratio;
        hi_at = {pool[i], pool[j]};
      }
    }
  }
  out.measured["chain_over_quasimetric_min"] = lo;
  out.measured["chain_over_quasimetric_max"] = hi;
  out.predicted["chain_over_quasimetric_min"] = 0.25;
  out.predicted["chain_over_quasimetric_max"] = 1.0;
  if (lo < 0.25 * (1.0 - 1e-12)) fail_with(out, {{"pair", pair_json(base, lo_at)}});
  if (hi > 1.0 + 1e-12) fail_with(out, {{"pair", pair_json(base, hi_at)}});

  // Quasihyperbolic biLipschitz constant of the identity against 80 A.
  const MappingPair id = MappingPair::vertex_identity(base_space.qh, s.qh);
  Rng pair_rng = sub_rng(ctx, 1);
  const auto all = interior_vertices(base);
  const auto pairs = sample_pairs(all, cnt(p, "pairs"), pair_rng);
  const RatioEstimate m = estimate_qh_bilipschitz(id, pairs);
  Rng a_rng = sub_rng(ctx, 2);
  const auto upairs = sample_pairs(all, cnt(p, "uniformity_pairs"), a_rng);
  const double A = estimate_uniformity(*base_space.qh, upairs).constant;
  out.measured["qh_bilipschitz_M"] = m.constant;
  out.measured["uniformity_A"] = A;
  out.predicted["qh_bilipschitz_M"] = 80.0 * A;
  out.diagnostics["slack"] = slack;
  out.diagnostics["has_infinity"] = sph.has_infinity();
  if (m.constant > 80.0 * A * slack) fail_with(out, {{"pair", pair_json(base, *m.witness)}});
  return out;
}

const MappingSlot& mapping_of(const Json& p, const Workspace& ws, const char* key = "mapping") {
  return ws.mapping(p.at(key).get<std::string>());
}

std::vector<VertexPair> mapping_pairs(const MappingPair& m, std::size_t count, Rng& rng) {
  return sample_pairs(m.mappable(), count, rng);
}

CheckOutcome relative_semisolid_chain(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingPair& m = *mapping_of(p, ws).pair;
  const DomainSample& src = m.source();
  const double slack = slack_of(p, ctx);
  const double lambda = num(p, "lambda");
  const double c = num(p, "c");
  const BallSampling sampling = ball_sampling(p, ctx);

  // Partial biLipschitz data (L, lambda) implies relative with c1 = L, t0 = lambda.
  const BiLipschitzEstimate L = estimate_partial_bilipschitz(m, lambda, sampling);
  const LipschitzEstimate c1 = estimate_relative(m, lambda, sampling);
  const ConstantsLedger rel =
      predicted_constants("relative_from_partial_lipschitz",
                          {{"L", clamp_one(L.constant)}, {"lambda", lambda}});
  out.measured["partial_bilipschitz_L"] = L.constant;
  out.measured["relative_c1"] = c1.constant;
  out.predicted["relative_c1"] = rel.at("c1");
  if (c1.constant > rel.at("c1") * slack) {
    fail_with(out, lipschitz_witness(src, c1, "relative"));
  }

  // Relative implies semisolid with c2 = 24 c c1 / t1.
  const ConstantsLedger semi = predicted_constants(
      "semisolid_from_relative", {{"c", c}, {"c1", clamp_one(c1.constant)}, {"t0", lambda}});
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = mapping_pairs(m, cnt(p, "pairs"), rng);
  const RatioEstimate c2 = estimate_semisolid(m, pairs);
  out.measured["semisolid_c2"] = c2.constant;
  out.predicted["semisolid_c2"] = semi.at("c2");
  out.skipped += c2.skipped;
  if (c2.constant > semi.at("c2") * slack) {
    fail_with(out, {{"estimate", "semisolid"}, {"pair", pair_json(src, *c2.witness)}});
  }

  // Semisolid implies partial Lipschitz at lambda = 1/(36 c^2 c2) with L = 24 c c2.
  const ConstantsLedger back = predicted_constants(
      "partial_lipschitz_from_semisolid", {{"c", c}, {"c2", clamp_one(c2.constant)}});
  const LipschitzEstimate L3 = estimate_partial_lipschitz(m, back.at("lambda"), sampling);
  out.measured["partial_lipschitz_at_semisolid_lambda"] = L3.constant;
  out.predicted["partial_lipschitz_at_semisolid_lambda"] = back.at("L");
  out.skipped += L.forward.skipped + L.inverse.skipped + c1.skipped + L3.skipped;
  if (L3.constant > back.at("L") * slack) {
    fail_with(out, lipschitz_witness(src, L3, "partial_lipschitz"));
  }
  out.diagnostics["ledgers"] = Json::array({ledger_json(rel), ledger_json(semi), ledger_json(back)});
  out.diagnostics["balls_used"] = L.forward.balls_used;
  out.diagnostics["semisolid_pairs"] = c2.pairs_used;
  out.diagnostics["slack"] = slack;
  return out;
}

CheckOutcome local_distortion_chain(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingPair& m = *mapping_of(p, ws).pair;
  const MappingPair inv = m.inverted();
  const DomainSample& src = m.source();
  const double slack = slack_of(p, ctx);
  const double t0 = num(p, "t0");
  const double c = num(p, "c");
  const BallSampling sampling = ball_sampling(p, ctx);

  // Relative data of f and f^-1 at t0.
  const LipschitzEstimate c1f = estimate_relative(m, t0, sampling);
  const LipschitzEstimate c1i = estimate_relative(inv, t0, sampling);
  const double c1 = std::max(c1f.constant, c1i.constant);
  out.measured["relative_c1"] = c1;

  // Relative implies locally biLipschitz at theta1 = t0/(8 c1) with L1 = 4 c1.
  const ConstantsLedger local = predicted_constants(
      "local_bilipschitz_from_relative", {{"c1", clamp_one(c1)}, {"t0", t0}});
  const double theta1 = local.at("theta1");
  const LocalBiLipschitzEstimate L1f = estimate_local_bilipschitz(m, theta1, sampling);
  const LocalBiLipschitzEstimate L1i = estimate_local_bilipschitz(inv, theta1, sampling);
  const double L1 = std::max(L1f.constant, L1i.constant);
  out.measured["local_bilipschitz_L1"] = L1;
  out.predicted["local_bilipschitz_L1"] = local.at("L1");
  if (L1 > local.at("L1") * slack) {
    const bool fwd = L1f.constant >= L1i.constant;
    const auto& e = fwd ? L1f : L1i;
    fail_with(out, {{"estimate", "local_bilipschitz"},
                    {"direction", fwd ? "forward" : "inverse"},
                    {"centre", vertex_json(fwd ? src : m.target(), *e.witness)}});
  }

  // Locally biLipschitz implies locally quasisymmetric at q = theta1, eta(t) = L1^2 t.
  const ConstantsLedger qs = predicted_constants("local_qs_from_local_bilipschitz",
                                                 {{"theta1", theta1}, {"L1", clamp_one(L1)}});
  const QuasisymmetryEstimate QS = estimate_local_quasisymmetry(m, qs.at("q"), sampling);
  out.measured["local_qs_slope"] = QS.slope;
  out.predicted["local_qs_slope"] = qs.at("eta_slope");
  if (QS.slope > qs.at("eta_slope") * slack) {
    fail_with(out, {{"estimate", "local_quasisymmetry"}, {"centre", vertex_json(src, *QS.witness)}});
  }

  // Locally quasisymmetric plus semisolid implies partial biLipschitz at Lemma's (lambda, q1).
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = mapping_pairs(m, cnt(p, "pairs"), rng);
  const RatioEstimate c2 = estimate_semisolid(m, pairs);
  Rng rng_inv = sub_rng(ctx, 1);
  const auto pairs_inv = mapping_pairs(inv, cnt(p, "pairs"), rng_inv);
  const RatioEstimate c2i = estimate_semisolid(inv, pairs_inv);
  const double c2max = std::max(c2.constant, c2i.constant);
  out.measured["semisolid_c2"] = c2max;
  const ConstantsLedger back =
      predicted_constants("partial_bilipschitz_from_local_qs",
                          {{"c", c}, {"c2", clamp_one(c2max)}, {"q", qs.at("q")}});
  const BiLipschitzEstimate L6 = estimate_partial_bilipschitz(m, back.at("lambda"), sampling);
  out.measured["partial_bilipschitz_at_local_qs_lambda"] = L6.constant;
  out.predicted["partial_bilipschitz_at_local_qs_lambda"] = back.at("L");
  if (L6.constant > back.at("L") * slack) {
    const bool fwd = L6.forward.constant >= L6.inverse.constant;
    fail_with(out, lipschitz_witness(fwd ? src : m.target(), fwd ? L6.forward : L6.inverse,
                                     "partial_bilipschitz"));
  }

  Json table = Json::array();
  for (const auto& [x, cx] : L1f.scale_table) {
    if (table.size() >= 20) break;
    table.push_back({{"centre", vertex_json(src, x)}, {"C_x", cx}});
  }
  out.diagnostics["scale_table_head"] = table;
  out.diagnostics["scale_table_size"] = L1f.scale_table.size();
  out.diagnostics["ledgers"] = Json::array({ledger_json(local), ledger_json(qs), ledger_json(back)});
  out.diagnostics["slack"] = slack;
  out.skipped = c1f.skipped + c1i.skipped + L1f.skipped + L1i.skipped + QS.skipped + c2.skipped +
                c2i.skipped + L6.forward.skipped + L6.inverse.skipped;
  return out;
}

double measured_uniformity(const QuasihyperbolicMetric& k, std::size_t pairs, Rng& rng) {
  const auto p = sample_pairs(interior_vertices(k.base()), pairs, rng);
  return estimate_uniformity(k, p).constant;
}

CheckOutcome qh_step_bound(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingPair& m = *mapping_of(p, ws).pair;
  const double slack = slack_of(p, ctx);
  const double q = num(p, "q");
  const BallSampling sampling = ball_sampling(p, ctx);
  double A = 0.0;
  if (p.contains("uniformity")) {
    A = num(p, "uniformity");
  } else {
    Rng r0 = sub_rng(ctx, 0);
    Rng r1 = sub_rng(ctx, 1);
    const double a_src = measured_uniformity(m.source_qh(), cnt(p, "uniformity_pairs"), r0);
    const double a_tgt = measured_uniformity(m.target_qh(), cnt(p, "uniformity_pairs"), r1);
    out.diagnostics["uniformity_source"] = a_src;
    out.diagnostics["uniformity_target"] = a_tgt;
    A = std::max(a_src, a_tgt);
  }
  const double eta = p.contains("eta_slope") ? num(p, "eta_slope")
                                             : estimate_local_quasisymmetry(m, q, sampling).slope;
  const ConstantsLedger led =
      predicted_constants("qh_step_bound", {{"A", clamp_one(A)}, {"q", q}, {"eta_slope", eta}});
  const StepBoundReport r = verify_qh_step_bound(m, led.at("t1"), led.at("step_bound"), sampling, slack);
  out.measured["uniformity_A"] = A;
  out.measured["eta_slope"] = eta;
  out.measured["max_image_k"] = r.worst;
  out.predicted["max_image_k"] = led.at("step_bound");
  out.measured["violations"] = r.violations.size();
  out.predicted["violations"] = 0;
  out.diagnostics["t1"] = led.at("t1");
  out.diagnostics["pairs_tested"] = r.pairs_tested;
  out.diagnostics["ledger"] = ledger_json(led);
  out.diagnostics["slack"] = slack;
  for (const VertexPair& v : r.violations) fail_with(out, pair_json(m.source(), v));
  if (r.pairs_tested == 0) {
    out.status = CheckOutcome::Status::kError;
    out.message = "no pair with k(x, y) <= t1: refine the grid or raise q";
  }
  return out;
}

struct Routed {
  std::shared_ptr<const QuasihyperbolicMetric> source;
  std::shared_ptr<const QuasihyperbolicMetric> target;
  std::optional<MappingPair> pair;
  bool sphericalized = false;
};

// Sphericalizes the unbounded sides of a mapping and carries the vertex
// correspondence over (same vertex sets).
Routed route_bounded(const MappingPair& m, Point2 source_pole, Point2 target_pole) {
  Routed out;
  auto side = [&](const QuasihyperbolicMetric& k, Point2 pole) {
    if (k.base().bounded()) return std::shared_ptr<const QuasihyperbolicMetric>();
    out.sphericalized = true;
    const auto base = k.shared_base();
    const SphericalSpace sph(base, nearest_boundary_sample(*base, pole));
    return make_qh_metric(sph.as_domain());
  };
  out.source = side(m.source_qh(), source_pole);
  out.target = side(m.target_qh(), target_pole);
  if (!out.sphericalized) return out;
  auto own = [](const QuasihyperbolicMetric& k) {
    return std::make_shared<const QuasihyperbolicMetric>(k.shared_base());
  };
  if (!out.source) out.source = own(m.source_qh());
  if (!out.target) out.target = own(m.target_qh());
  out.pair = MappingPair::from_tables(out.source, out.target, m.forward_table(), m.inverse_table());
  return out;
}

CheckOutcome global_qs_hypotheses(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingSlot& slot = mapping_of(p, ws);
  const MappingPair& m = *slot.pair;
  const double slack = slack_of(p, ctx);
  const Point2 sp = pt(p, "source_pole");
  const Point2 tp = pt(p, "target_pole");

  struct Measure {
    GlobalQsReport report;
    double a_src = 0.0;
    double a_tgt = 0.0;
    bool sphericalized = false;
  };
  auto measure = [&](const MappingPair& mp) {
    Measure r;
    const Routed routed = route_bounded(mp, sp, tp);
    r.sphericalized = routed.sphericalized;
    const MappingPair& use = routed.pair ? *routed.pair : mp;
    Rng r0 = sub_rng(ctx, 0);
    Rng r1 = sub_rng(ctx, 1);
    r.a_src = measured_uniformity(use.source_qh(), cnt(p, "uniformity_pairs"), r0);
    r.a_tgt = measured_uniformity(use.target_qh(), cnt(p, "uniformity_pairs"), r1);
    r.report = check_global_qs_hypotheses(use, r.a_src, r.a_tgt, slack);
    return r;
  };
  const Measure base = measure(m);
  const GlobalQsReport& g = base.report;
  out.measured["C0"] = g.c0;
  out.measured["source_ratio"] = g.source_ratio;
  out.measured["target_ratio"] = g.target_ratio;
  out.predicted["source_ratio"] = g.source_bound;
  out.predicted["target_ratio"] = g.target_bound;
  out.measured["uniformity_source"] = base.a_src;
  out.measured["uniformity_target"] = base.a_tgt;
  out.diagnostics["w"] = vertex_json(m.source(), g.w);
  out.diagnostics["sphericalized"] = base.sphericalized;
  out.diagnostics["slack"] = slack;
  if (!g.holds) {
    fail_with(out, {{"w", vertex_json(m.source(), g.w)},
                    {"source_ratio", g.source_ratio},
                    {"target_ratio", g.target_ratio}});
  }

  if (base.sphericalized && p.at("sensitivity").get<bool>()) {
    // Re-run with unbounded sides truncated at twice the radius.
    if (!slot.map) throw ConfigError("truncation sensitivity needs a closed-form map");
    const Space& s0 = ws.space(slot.entry->source);
    const Space& t0 = ws.space(slot.entry->target);
    auto widen = [](const Space& s) {
      return make_qh_metric(build_domain(*s.origin, 1.0, s.domain->bounded() ? 1.0 : 2.0));
    };
    const MappingPair wide = MappingPair::from_planar_map(widen(s0), widen(t0), slot.map);
    const Measure w = measure(wide);
    const double tol = num(p, "sensitivity_tolerance");
    const double drift = std::max({relative_change(g.c0, w.report.c0),
                                   relative_change(g.source_ratio, w.report.source_ratio),
                                   relative_change(g.target_ratio, w.report.target_ratio)});
    out.measured["C0_double_truncation"] = w.report.c0;
    out.measured["source_ratio_double_truncation"] = w.report.source_ratio;
    out.measured["target_ratio_double_truncation"] = w.report.target_ratio;
    out.measured["truncation_drift"] = drift;
    out.predicted["truncation_drift"] = tol;
    if (!(drift < tol)) {
      fail_with(out, {{"w", vertex_json(m.source(), g.w)},
                      {"C0", g.c0},
                      {"C0_double_truncation", w.report.c0}});
    }
  }
  return out;
}

CheckOutcome quasimobius_envelope(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingPair& m = *mapping_of(p, ws).pair;
  Rng rng = sub_rng(ctx, 0);
  const auto pool = sample_subset(m.mappable(), cnt(p, "pool"), rng);
  const std::size_t n = cnt(p, "quadruples");
  const auto quads = index_quadruples(pool.size(), n * cnt(p, "growth"), rng);
  const std::span<const PointQuadruple> first(quads.data(), std::min(n, quads.size()));
  const CrossRatioReport r = estimate_quasimobius(m, pool, first);
  const CrossRatioReport grown = estimate_quasimobius(m, pool, quads);
  out.measured["slope"] = r.slope;
  out.measured["slope_grown"] = grown.slope;
  out.skipped = r.skipped;
  out.diagnostics["quadruples_tested"] = r.tested;
  out.diagnostics["grown_quadruples_tested"] = grown.tested;
  auto witness = [&](const CrossRatioReport& c) {
    Json w = Json::array();
    if (c.witness) {
      for (std::size_t i : *c.witness) w.push_back(vertex_json(m.source(), pool[i]));
    }
    return Json{{"quadruple", w}};
  };
  if (p.at("exact").get<bool>()) {
    // Cross-ratios are invariant: the slope is 1 both ways round.
    const double tol = num(p, "exact_tolerance");
    for (const CrossRatioReport* c : {&r, &grown}) {
      if (std::abs(c->slope - 1.0) > tol) fail_with(out, witness(*c));
    }
    const DomainSample& src = m.source();
    std::vector<Point2> pts;
    std::vector<Point2> img;
    for (VertexId v : pool) {
      pts.push_back(src.position(v));
      img.push_back(m.map() ? m.map()->forward(pts.back()) : m.target().position(m.forward(v)));
    }
    auto d0 = [&](std::size_t i, std::size_t j) { return distance(pts[i], pts[j]); };
    auto d1 = [&](std::size_t i, std::size_t j) { return distance(img[i], img[j]); };
    const CrossRatioReport rev =
        cross_ratio_distortion(d1, d0, quads, degeneracy_guard(m.target()), degeneracy_guard(src));
    const double lowest = 1.0 / rev.slope;
    if (std::abs(rev.slope - 1.0) > tol) fail_with(out, witness(rev));
    out.measured["min_ratio"] = lowest;
    out.predicted["slope"] = 1.0;
    out.predicted["min_ratio"] = 1.0;
    out.diagnostics["exact_tolerance"] = tol;
  } else {
    const double drift = relative_change(r.slope, grown.slope);
    out.measured["growth_drift"] = drift;
    out.predicted["growth_drift"] = num(p, "drift");
    if (!std::isfinite(grown.slope) || !(drift < num(p, "drift"))) fail_with(out, witness(grown));
  }
  return out;
}

// Every estimator of a mapping at fixed settings, for neutrality and
// invariance comparisons.
struct EstimatorOutputs {
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<VertexId, double>> scale_table;
};

EstimatorOutputs all_estimators(const MappingPair& m, const Json& p, const CheckContext& ctx) {
  EstimatorOutputs o;
  const BallSampling sampling = ball_sampling(p, ctx);
  const double lambda = num(p, "lambda");
  const double q = num(p, "q");
  const BiLipschitzEstimate L = estimate_partial_bilipschitz(m, lambda, sampling);
  o.values.emplace_back("partial_lipschitz", L.forward.constant);
  o.values.emplace_back("partial_lipschitz_inverse", L.inverse.constant);
  o.values.emplace_back("relative_c1", estimate_relative(m, lambda, sampling).constant);
  Rng rng = sub_rng(ctx, 0);
  const auto pairs = sample_pairs(m.mappable(), cnt(p, "pairs"), rng);
  o.values.emplace_back("semisolid_c2", estimate_semisolid(m, pairs).constant);
  o.values.emplace_back("qh_bilipschitz_M", estimate_qh_bilipschitz(m, pairs).constant);
  const QuasiIsometryEstimate qi = estimate_quasi_isometry(m, pairs);
  o.values.emplace_back("quasi_isometry_L", qi.multiplicative);
  o.values.emplace_back("quasi_isometry_C", qi.additive);
  const LocalBiLipschitzEstimate L1 = estimate_local_bilipschitz(m, q, sampling);
  o.values.emplace_back("local_bilipschitz_L1", L1.constant);
  o.scale_table = L1.scale_table;
  o.values.emplace_back("local_qs_slope", estimate_local_quasisymmetry(m, q, sampling).slope);
  Rng qrng = sub_rng(ctx, 1);
  const auto pool = sample_subset(m.mappable(), 256, qrng);
  const auto quads = index_quadruples(pool.size(), cnt(p, "quadruples"), qrng);
  o.values.emplace_back("quasimobius_slope", estimate_quasimobius(m, pool, quads).slope);
  return o;
}

CheckOutcome neutral_estimators(const Json& p, const Workspace& ws, const CheckContext& ctx) {
  CheckOutcome out;
  const MappingPair& m = *mapping_of(p, ws).pair;
  const double scale = num(p, "scale");
  const EstimatorOutputs got = all_estimators(m, p, ctx);
  std::optional<EstimatorOutputs> ref;
  if (p.contains("reference")) ref = all_estimators(*mapping_of(p, ws, "reference").pair, p, ctx);
  for (std::size_t i = 0; i < got.values.size(); ++i) {
    const auto& [name, value] = got.values[i];
    const double expected = ref ? ref->values[i].second : (name == "quasi_isometry_C" ? 0.0 : 1.0);
    out.measured[name] = value;
    out.predicted[name] = expected;
    if (value != expected) fail_with(out, {{"estimate", name}, {"value", value}, {"expected", expected}});
  }
  // C_x scales by the similarity ratio, centre by centre.
  std::size_t mismatched = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < got.scale_table.size(); ++i) {
    const auto [x, cx] = got.scale_table[i];
    double expected = scale;
    if (ref) {
      if (i >= ref->scale_table.size() || ref->scale_table[i].first != x) {
        throw ConfigError("reference mapping samples different ball centres");
      }
      expected = scale * ref->scale_table[i].second;
    }
    if (cx != expected) {
      ++mismatched;
      worst = std::max(worst, std::abs(cx - expected));
      fail_with(out, {{"estimate", "C_x"}, {"centre", vertex_json(m.source(), x)}, {"C_x", cx},
                      {"expected", expected}});
    }
  }
  if (ref && ref->scale_table.size() != got.scale_table.size()) {
    fail_with(out, {{"estimate", "C_x"}, {"reason", "table sizes differ"}});
  }
  out.measured["scale_table_mismatches"] = mismatched;
  out.predicted["scale_table_mismatches"] = 0;
  out.diagnostics["scale_table_size"] = got.scale_table.size();
  out.diagnostics["scale_table_max_abs_error"] = worst;
  out.diagnostics["scale"] = scale;
  return out;
}

using CheckFn = CheckOutcome (*)(const Json&, const Workspace&, const CheckContext&);

const std::map<std::string, CheckFn, std::less<>>& dispatch() {
  static const std::map<std::string, CheckFn, std::less<>> table = {
      {"metric_axioms", metric_axioms},
      {"quasiconvexity", quasiconvexity},
      {"ball_containment", ball_containment},
      {"qh_calibration", qh_calibration},
      {"qh_distance_bounds", qh_distance_bounds},
      {"uniformity", uniformity},
      {"basepoint_identity", basepoint_identity},
      {"hyperbolicity", hyperbolicity},
      {"bhk_diameter_bound", bhk_diameter_bound},
      {"bhk_comparability", bhk_comparability},
      {"basepoint_change", basepoint_change},
      {"sphericalization_quasimobius", sphericalization_quasimobius},
      {"relative_semisolid_chain", relative_semisolid_chain},
      {"local_distortion_chain", local_distortion_chain},
      {"qh_step_bound", qh_step_bound},
      {"global_qs_hypotheses", global_qs_hypotheses},
      {"quasimobius_envelope", quasimobius_envelope},
      {"neutral_estimators", neutral_estimators},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, params] : param_table()) out.push_back(id);
    return out;
  }();
  return ids;
}

const std::vector<ParamSpec>* check_params(std::string_view id) {
  const auto it = param_table().find(id);
  return it == param_table().end() ? nullptr : &it->second;
}

std::string_view to_string(CheckOutcome::Status status) {
  switch (status) {
    case CheckOutcome::Status::kPass: return "pass";
    case CheckOutcome::Status::kFail: return "fail";
    case CheckOutcome::Status::kError: return "error";
  }
  return "error";
}

CheckOutcome run_check(const CheckEntry& check, const Workspace& workspace,
                       const CheckContext& context) {
  const auto it = dispatch().find(check.id);
  if (it == dispatch().end()) throw InternalError("no implementation for check " + check.id);
  try {
    return it->second(check.params, workspace, context);
  } catch (const ConfigError& e) {
    CheckOutcome out;
    out.status = CheckOutcome::Status::kError;
    out.message = e.what();
    return out;
  }
}

}  // namespace qhgeo::verifier
