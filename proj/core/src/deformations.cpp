#include "qhgeo/deformations.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "qhgeo/error.hpp"
#include "qhgeo/finite_metric.hpp"

namespace qhgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ambient metric that is the shortest-path metric of a (deformed) graph.
class GraphMetricAmbient final : public AmbientMetric {
 public:
  explicit GraphMetricAmbient(std::shared_ptr<const GraphMetric> metric)
      : metric_(std::move(metric)) {}
  double distance(VertexId a, VertexId b) const override { return metric_->distance(a, b); }
  std::vector<double> row(VertexId a) const override { return metric_->tree(a)->distance; }
  double to_boundary_sample(VertexId, std::size_t) const override {
    throw InternalError("deformed space has no boundary samples");
  }
  std::size_t size() const override { return metric_->size(); }

 private:
  std::shared_ptr<const GraphMetric> metric_;
};

}  // namespace

double bhk_density(const QuasihyperbolicMetric& k, VertexId x, VertexId w, double epsilon) {
  return std::exp(-epsilon * k.distance(w, x));
}

BhkSpace::BhkSpace(std::shared_ptr<const QuasihyperbolicMetric> k, VertexId w, double epsilon)
    : k_(std::move(k)), w_(w), epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  const DomainSample& base = k_->base();
  if (w >= base.size()) throw ConfigError("deformation base point is not a vertex");

  const auto tree = k_->metric().tree(w);
  density_.resize(base.size());
  for (std::size_t v = 0; v < density_.size(); ++v) {
    density_[v] = std::exp(-epsilon * tree->distance[v]);
  }
  LengthGraph graph = k_->graph().reweighted([&](VertexId u, VertexId v, double weight) {
    return weight * (density_[u] + density_[v]) / 2.0;
  });

  std::vector<std::pair<VertexId, double>> exits;
  exits.reserve(density_.size());
  for (std::size_t v = 0; v < density_.size(); ++v) {
    exits.emplace_back(static_cast<VertexId>(v), density_[v] / epsilon);
  }
  boundary_distance_ = shortest_distances(graph, exits);
  metric_ = std::make_shared<const GraphMetric>(graph);

  DomainSample::Parts parts;
  parts.graph = std::move(graph);
  parts.boundary_distance = boundary_distance_;
  parts.ambient = std::make_shared<GraphMetricAmbient>(metric_);
  parts.positions = base.positions();
  parts.resolution = base.resolution();
  parts.quasiconvexity = 1.0;
  parts.bounded = true;
  domain_ = std::make_shared<const DomainSample>(std::move(parts));
}

DiameterEstimate BhkSpace::diameter(std::size_t sweeps) const {
  DiameterEstimate out;
  const auto from_w = metric_->tree(w_);
  const auto far_w = std::max_element(from_w->distance.begin(), from_w->distance.end());
  out.upper = 2.0 * *far_w;
  out.estimate = *far_w;
  out.witness = {w_, static_cast<VertexId>(far_w - from_w->distance.begin())};
  VertexId source = out.witness.second;
  for (std::size_t s = 0; s < sweeps; ++s) {
    const auto tree = metric_->tree(source);
    const auto far = std::max_element(tree->distance.begin(), tree->distance.end());
    const auto target = static_cast<VertexId>(far - tree->distance.begin());
    if (*far > out.estimate) {
      out.estimate = *far;
      out.witness = {source, target};
    } else if (s > 0) {
      break;
    }
    source = target;
  }
  return out;
}

ComparabilityReport verify_gromov_comparability(const BhkSpace& space,
                                                std::span<const VertexPair> pairs) {
  ComparabilityReport report;
  const QuasihyperbolicMetric& k = space.qh();
  const double eps = space.epsilon();
  const auto from_w = k.metric().tree(space.base_point());
  double hi = 0.0;
  double lo = kInf;
  double worst = 0.0;
  for (const VertexPair& p : pairs) {
    const auto [x, y] = p;
    if (x == y) {
      ++report.skipped;
      continue;
    }
    const double kxy = k.distance(x, y);
    const double product = 0.5 * (from_w->distance[x] + from_w->distance[y] - kxy);
    const double predicted = std::exp(-eps * product) * std::min(1.0, eps * kxy) / eps;
    const double ratio = predicted / space.distance(x, y);
    ++report.pairs_used;
    if (ratio > hi) hi = ratio;
    if (ratio < lo) lo = ratio;
    const double c = std::max(ratio, 1.0 / ratio);
    if (!report.witness || c > worst) {
      worst = c;
      report.witness = p;
    }
  }
  if (report.pairs_used > 0) {
    report.max_ratio = hi;
    report.min_ratio = lo;
    report.constant = std::max(hi, 1.0 / lo);
  }
  return report;
}

CrossRatioReport basepoint_change_distortion(const BhkSpace& from, const BhkSpace& to,
                                             std::span<const VertexId> pool,
                                             std::span<const PointQuadruple> quadruples) {
  if (&from.qh() != &to.qh() || from.epsilon() != to.epsilon()) {
    throw ConfigError("base-point change needs two deformations of one base with equal epsilon");
  }
  const std::vector<VertexId> members(pool.begin(), pool.end());
  auto rows = [](const BhkSpace& s) {
    return [&s](VertexId v) { return s.metric().tree(v)->distance; };
  };
  const FiniteMetric m0 = FiniteMetric::from_rows(members, rows(from));
  const FiniteMetric m1 = FiniteMetric::from_rows(members, rows(to));
  auto spread = [](const FiniteMetric& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) best = std::max(best, m(i, j));
    return best;
  };
  return cross_ratio_distortion(m0, m1, quadruples, 1e-9 * spread(m0), 1e-9 * spread(m1));
}

namespace detail {

// Chain metric machinery shared by a SphericalSpace and the ambient metric of
// its domain view.
class SphericalChain {
 public:
  SphericalChain(std::shared_ptr<const DomainSample> base, std::size_t p)
      : base_(std::move(base)), p_(p), infinity_(!base_->bounded()) {
    if (!base_->shape() || !base_->embedded()) {
      throw ConfigError("sphericalization needs an embedded planar domain");
    }
    if (p >= base_->boundary_sample_count()) {
      throw ConfigError("sphericalization pole must be a boundary sample");
    }
    const std::size_t n = base_->size();
    scale_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      scale_[v] = 1.0 / (1.0 + base_->ambient().to_boundary_sample(static_cast<VertexId>(v), p));
    }
    capacity_ = std::max<std::size_t>(4, (std::size_t{128} << 20) / (8 * n + 64));
  }

  const DomainSample& base() const { return *base_; }
  std::size_t pole() const { return p_; }
  bool infinity() const { return infinity_; }
  double scale(VertexId v) const { return scale_[v]; }
  double quasimetric(VertexId a, VertexId b) const {
    return distance(base_->position(a), base_->position(b)) * scale_[a] * scale_[b];
  }

  std::shared_ptr<const std::vector<double>> row(VertexId a) const {
    {
      std::lock_guard lock(mutex_);
      if (const auto it = cache_.find(a); it != cache_.end()) return it->second;
    }
    std::vector<double> init(base_->size(), kInf);
    init[a] = 0.0;
    auto computed = std::make_shared<const std::vector<double>>(dense_pass(std::move(init)));
    std::lock_guard lock(mutex_);
    if (const auto it = cache_.find(a); it != cache_.end()) return it->second;
    if (order_.size() >= capacity_) {
      cache_.erase(order_.front());
      order_.pop_front();
    }
    cache_.emplace(a, computed);
    order_.push_back(a);
    return computed;
  }

  // Dense Dijkstra over all vertices (plus infinity) for the complete graph
  // with edge weights s; `init` holds starting values per vertex.
  std::vector<double> dense_pass(std::vector<double> init) const {
    const std::size_t n = base_->size();
    const std::size_t total = n + (infinity_ ? 1 : 0);
    std::vector<double> dist = std::move(init);
    dist.resize(total, kInf);
    std::vector<char> done(total, 0);
    const std::vector<Point2>& pos = base_->positions();
    std::size_t next = total;
    double next_d = kInf;
    for (std::size_t v = 0; v < total; ++v) {
      if (dist[v] < next_d) {
        next_d = dist[v];
        next = v;
      }
    }
    while (next < total) {
      const std::size_t u = next;
      done[u] = 1;
      const double du = dist[u];
      next = total;
      next_d = kInf;
      if (u == n) {
        for (std::size_t v = 0; v < n; ++v) {
          if (done[v]) continue;
          const double cand = du + scale_[v];
          if (cand < dist[v]) dist[v] = cand;
          if (dist[v] < next_d) {
            next_d = dist[v];
            next = v;
          }
        }
      } else {
        const Point2 pu = pos[u];
        const double su = scale_[u];
        for (std::size_t v = 0; v < n; ++v) {
          if (done[v]) continue;
          const double cand = du + distance(pu, pos[v]) * su * scale_[v];
          if (cand < dist[v]) dist[v] = cand;
          if (dist[v] < next_d) {
            next_d = dist[v];
            next = v;
          }
        }
        if (infinity_ && !done[n]) {
          const double cand = du + su;
          if (cand < dist[n]) dist[n] = cand;
          if (dist[n] < next_d) {
            next_d = dist[n];
            next = n;
          }
        }
      }
    }
    dist.resize(n);
    return dist;
  }

  // Diameter of the completion: vertices, boundary samples (pole included)
  // and infinity, by farthest-point sweeps over that extended point set.
  double closure_diameter(std::size_t sweeps) const {
    const DomainSample& b = *base_;
    const std::size_t n = b.size();
    const auto& samples = b.boundary_positions();
    const std::size_t nb = samples.size();
    const std::size_t total = n + nb + (infinity_ ? 1 : 0);
    const std::vector<Point2>& pos = b.positions();
    std::vector<double> sample_scale(nb);
    for (std::size_t s = 0; s < nb; ++s) {
      sample_scale[s] = 1.0 / (1.0 + qhgeo::distance(samples[s], samples[p_]));
    }
    auto extended_row = [&](std::size_t src) {
      std::vector<double> out(total, kInf);
      std::vector<double> vrow;
      if (src < n) {
        vrow = *row(static_cast<VertexId>(src));
      } else {
        std::vector<double> init(n);
        for (std::size_t v = 0; v < n; ++v) {
          init[v] = src < n + nb
                        ? qhgeo::distance(pos[v], samples[src - n]) * scale_[v] * sample_scale[src - n]
                        : scale_[v];
        }
        vrow = dense_pass(std::move(init));
        for (std::size_t s = 0; s < nb; ++s) {
          out[n + s] = src < n + nb ? qhgeo::distance(samples[src - n], samples[s]) *
                                          sample_scale[src - n] * sample_scale[s]
                                    : sample_scale[s];
        }
        if (infinity_ && src < n + nb) out[n + nb] = sample_scale[src - n];
      }
      std::copy(vrow.begin(), vrow.end(), out.begin());
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t s = 0; s < nb; ++s) {
          out[n + s] = std::min(out[n + s],
                                vrow[v] + qhgeo::distance(pos[v], samples[s]) * scale_[v] * sample_scale[s]);
        }
        if (infinity_) out[n + nb] = std::min(out[n + nb], vrow[v] + scale_[v]);
      }
      out[src] = 0.0;
      return out;
    };
    double best = 0.0;
    std::size_t source = n + p_;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      const std::vector<double> r = extended_row(source);
      const auto far = std::max_element(r.begin(), r.end());
      if (*far <= best && sweep > 1) break;
      best = std::max(best, *far);
      source = static_cast<std::size_t>(far - r.begin());
    }
    return best;
  }

  std::vector<double> boundary_distances() const {
    const DomainSample& b = *base_;
    const std::size_t n = b.size();
    const auto& samples = b.boundary_positions();
    const Point2 pole = samples[p_];
    std::vector<double> sample_scale(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
      sample_scale[s] = 1.0 / (1.0 + qhgeo::distance(samples[s], pole));
    }
    std::vector<double> init(n, kInf);
    for (std::size_t v = 0; v < n; ++v) {
      const Point2 pv = b.position(static_cast<VertexId>(v));
      double best = infinity_ ? scale_[v] : kInf;
      for (std::size_t s = 0; s < samples.size(); ++s) {
        if (s == p_) continue;
        best = std::min(best, qhgeo::distance(pv, samples[s]) * scale_[v] * sample_scale[s]);
      }
      init[v] = best;
    }
    return dense_pass(std::move(init));
  }

 private:
  std::shared_ptr<const DomainSample> base_;
  std::size_t p_;
  bool infinity_;
  std::vector<double> scale_;
  std::size_t capacity_ = 4;
  mutable std::mutex mutex_;
  mutable std::unordered_map<VertexId, std::shared_ptr<const std::vector<double>>> cache_;
  mutable std::deque<VertexId> order_;
};

}  // namespace detail

namespace {

class ChainAmbient final : public AmbientMetric {
 public:
  explicit ChainAmbient(std::shared_ptr<const detail::SphericalChain> chain)
      : chain_(std::move(chain)) {}
  double distance(VertexId a, VertexId b) const override { return (*chain_->row(a))[b]; }
  std::vector<double> row(VertexId a) const override { return *chain_->row(a); }
  double to_boundary_sample(VertexId, std::size_t) const override {
    throw InternalError("sphericalized space has no boundary samples");
  }
  std::size_t size() const override { return chain_->base().size(); }

 private:
  std::shared_ptr<const detail::SphericalChain> chain_;
};

}  // namespace

SphericalSpace::SphericalSpace(std::shared_ptr<const DomainSample> base, std::size_t p)
    : chain_(std::make_shared<const detail::SphericalChain>(std::move(base), p)) {
  const DomainSample& b = chain_->base();
  boundary_distance_ = chain_->boundary_distances();
  DomainSample::Parts parts;
  parts.graph = b.graph().reweighted([&](VertexId u, VertexId v, double length) {
    return length * chain_->scale(u) * chain_->scale(v);
  });
  parts.boundary_distance = boundary_distance_;
  parts.ambient = std::make_shared<ChainAmbient>(chain_);
  parts.positions = b.positions();
  parts.resolution = b.resolution();
  parts.quasiconvexity = 1.0;
  parts.bounded = true;
  parts.closure_diameter = [chain = chain_] { return chain->closure_diameter(16); };
  parts.closure_diameter = [chain = chain_] { return chain->closure_diameter(16); };
  domain_ = std::make_shared<const DomainSample>(std::move(parts));
}

const DomainSample& SphericalSpace::base() const { return chain_->base(); }
std::size_t SphericalSpace::pole() const { return chain_->pole(); }
bool SphericalSpace::has_infinity() const { return chain_->infinity(); }
double SphericalSpace::quasimetric(VertexId a, VertexId b) const {
  return chain_->quasimetric(a, b);
}
double SphericalSpace::to_infinity(VertexId a) const { return chain_->scale(a); }
std::shared_ptr<const std::vector<double>> SphericalSpace::row(VertexId a) const {
  return chain_->row(a);
}

std::size_t nearest_boundary_sample(const DomainSample& domain, Point2 point) {
  const auto& samples = domain.boundary_positions();
  if (samples.empty()) throw ConfigError("domain has no embedded boundary samples");
  std::size_t best = 0;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    if (distance(samples[s], point) < distance(samples[best], point)) best = s;
  }
  return best;
}

}  // namespace qhgeo
