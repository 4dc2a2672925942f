#include "qhgeo/length_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

#include "qhgeo/error.hpp"

namespace qhgeo {

namespace {

using QueueEntry = std::pair<double, VertexId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

LengthGraph::LengthGraph(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count >= kNoVertex) {
    throw ConfigError("graph too large: " + std::to_string(vertex_count) + " vertices");
  }
  std::vector<std::vector<Arc>> adjacency(vertex_count);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw ConfigError("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw ConfigError("self loop at vertex " + std::to_string(e.u));
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw ConfigError("edge length must be positive and finite");
    }
    adjacency[e.u].push_back({e.v, e.length});
    adjacency[e.v].push_back({e.u, e.length});
  }
  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) {
      return a.to != b.to ? a.to < b.to : a.length < b.length;
    });
    list.erase(std::unique(list.begin(), list.end(),
                           [](const Arc& a, const Arc& b) { return a.to == b.to; }),
               list.end());
    offsets_[v + 1] = offsets_[v] + list.size();
  }
  arcs_.reserve(offsets_.back());
  for (auto& list : adjacency) {
    arcs_.insert(arcs_.end(), list.begin(), list.end());
  }
}

void LengthGraph::validate_lengths() const {
  for (const Arc& a : arcs_) {
    if (!(a.length > 0.0) || !std::isfinite(a.length)) {
      throw ConfigError("edge length must be positive and finite");
    }
  }
}

bool LengthGraph::is_connected() const {
  const std::size_t n = vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const Arc& a : neighbors(u)) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
    }
  }
  return count == n;
}

std::vector<Edge> LengthGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (const Arc& a : neighbors(u)) {
      if (u < a.to) out.push_back({u, a.to, a.length});
    }
  }
  return out;
}

std::vector<VertexId> ShortestPathTree::path_to(VertexId target) const {
  if (target >= distance.size() || !std::isfinite(distance[target])) {
    throw InternalError("vertex " + std::to_string(target) + " unreachable from " +
                        std::to_string(source));
  }
  std::vector<VertexId> path;
  for (VertexId v = target; v != kNoVertex; v = parent[v]) {
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree shortest_path_tree(const LengthGraph& graph, VertexId source) {
  const std::size_t n = graph.vertex_count();
  if (source >= n) throw InternalError("source vertex out of range");
  ShortestPathTree tree;
  tree.source = source;
  tree.distance.assign(n, kUnreachable);
  tree.parent.assign(n, kNoVertex);
  std::vector<char> settled(n, 0);
  MinQueue queue;
  tree.distance[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (const Arc& a : graph.neighbors(u)) {
      const double nd = du + a.length;
      double& dv = tree.distance[a.to];
      if (nd < dv) {
        dv = nd;
        tree.parent[a.to] = u;
        queue.push({nd, a.to});
      } else if (nd == dv && u < tree.parent[a.to] && a.to != source) {
        tree.parent[a.to] = u;
      }
    }
  }
  return tree;
}

std::vector<double> shortest_distances(const LengthGraph& graph,
                                       std::span<const std::pair<VertexId, double>> seeds) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kUnreachable);
  std::vector<char> settled(n, 0);
  MinQueue queue;
  for (const auto& [v, offset] : seeds) {
    if (v >= n) throw InternalError("seed vertex out of range");
    if (offset < dist[v]) {
      dist[v] = offset;
      queue.push({offset, v});
    }
  }
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (const Arc& a : graph.neighbors(u)) {
      const double nd = du + a.length;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  return dist;
}

double bounded_distance(const LengthGraph& graph, VertexId source, VertexId target,
                        double limit) {
  if (source == target) return 0.0;
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kUnreachable);
  MinQueue queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du > dist[u]) continue;
    if (du > limit) return kUnreachable;
    if (u == target) return du;
    for (const Arc& a : graph.neighbors(u)) {
      const double nd = du + a.length;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  return kUnreachable;
}

std::vector<std::pair<VertexId, double>> graph_ball(const LengthGraph& graph, VertexId source,
                                                    double radius) {
  std::vector<std::pair<VertexId, double>> out;
  std::vector<double> dist(graph.vertex_count(), kUnreachable);
  MinQueue queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [du, u] = queue.top();
    queue.pop();
    if (du > dist[u]) continue;
    if (du > radius) break;
    out.emplace_back(u, du);
    for (const Arc& a : graph.neighbors(u)) {
      const double nd = du + a.length;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  return out;
}

}  // namespace qhgeo
