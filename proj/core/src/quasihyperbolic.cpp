#include "qhgeo/quasihyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "qhgeo/error.hpp"

namespace qhgeo {

namespace {

LengthGraph qh_graph(const DomainSample& base) {
  const auto& dg = base.boundary_distances();
  return base.graph().reweighted([&](VertexId u, VertexId v, double length) {
    return qh_edge_weight(length, dg[u], dg[v]);
  });
}

// Length of each edge along a path, looked up in the length graph.
std::vector<double> step_lengths(const LengthGraph& graph, const std::vector<VertexId>& path) {
  std::vector<double> out;
  out.reserve(path.size());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto arcs = graph.neighbors(path[i - 1]);
    const auto it = std::lower_bound(arcs.begin(), arcs.end(), path[i],
                                     [](const Arc& a, VertexId v) { return a.to < v; });
    if (it == arcs.end() || it->to != path[i]) throw InternalError("geodesic uses a missing edge");
    out.push_back(it->length);
  }
  return out;
}

}  // namespace

QuasihyperbolicMetric::QuasihyperbolicMetric(std::shared_ptr<const DomainSample> base)
    : base_(std::move(base)), metric_(qh_graph(*base_)) {}

std::shared_ptr<const QuasihyperbolicMetric> make_qh_metric(
    std::shared_ptr<const DomainSample> base) {
  return std::make_shared<const QuasihyperbolicMetric>(std::move(base));
}

DistanceBoundReport verify_distance_bounds(const QuasihyperbolicMetric& k,
                                           std::span<const VertexPair> pairs, double slack) {
  DistanceBoundReport report;
  const DomainSample& base = k.base();
  const double c = base.quasiconvexity();
  auto record = [&](VertexPair p, DistanceBound b, double lhs, double rhs, double& worst) {
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    if (lhs > rhs * slack) report.violations.push_back({p, b, lhs, rhs * slack});
  };
  for (const VertexPair& p : pairs) {
    const auto [x, y] = p;
    ++report.pairs_checked;
    const double d = base.ambient_distance(x, y);
    const double kxy = k.distance(x, y);
    const double dgx = base.boundary_distance(x);
    record(p, DistanceBound::kExponential, d, std::expm1(kxy) * dgx, report.worst_exponential);
    if (d <= dgx / (3.0 * c) || kxy <= 1.0) {
      ++report.local_pairs;
      record(p, DistanceBound::kLocalLower, 0.5 * d / dgx, kxy, report.worst_local_lower);
      record(p, DistanceBound::kLocalUpper, kxy, 3.0 * c * d / dgx, report.worst_local_upper);
    }
  }
  return report;
}

UniformityReport estimate_uniformity(const QuasihyperbolicMetric& k,
                                     std::span<const VertexPair> pairs) {
  UniformityReport report;
  const DomainSample& base = k.base();
  double best = 0.0;
  for (const VertexPair& p : pairs) {
    const auto [x, y] = p;
    const double d = base.ambient_distance(x, y);
    if (x == y || !(d > 0.0)) {
      ++report.skipped;
      continue;
    }
    const std::vector<VertexId> path = k.geodesic(x, y);
    const std::vector<double> steps = step_lengths(base.graph(), path);
    double total = 0.0;
    for (double s : steps) total += s;

    UniformityEntry e{p, total / d, 0.0};
    double walked = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) walked += steps[i - 1];
      const double arm = std::min(walked, total - walked);
      e.cigar_ratio = std::max(e.cigar_ratio, arm / base.boundary_distance(path[i]));
    }
    const double a = std::max(e.length_ratio, e.cigar_ratio);
    if (a > best) {
      best = a;
      report.worst_pair = p;
    }
    report.entries.push_back(e);
  }
  report.constant = std::max(1.0, best);
  return report;
}

}  // namespace qhgeo
