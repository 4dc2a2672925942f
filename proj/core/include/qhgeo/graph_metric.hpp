#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "qhgeo/length_graph.hpp"

namespace qhgeo {

/// Shortest-path metric of a LengthGraph with a bounded per-source cache of
/// shortest-path trees.
///
/// `distance(a, b)` always reads the tree rooted at `a`, so results never
/// depend on cache state. The cache is guarded by a mutex; concurrent queries
/// from different threads are safe.
class GraphMetric {
 public:
  /// `cache_bytes` bounds the memory held by cached trees (at least 4 trees).
  explicit GraphMetric(LengthGraph graph, std::size_t cache_bytes = std::size_t{256} << 20);

  GraphMetric(const GraphMetric&) = delete;
  GraphMetric& operator=(const GraphMetric&) = delete;

  const LengthGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.vertex_count(); }

  double distance(VertexId a, VertexId b) const { return tree(a)->distance[b]; }
  std::shared_ptr<const ShortestPathTree> tree(VertexId source) const;
  std::vector<VertexId> path(VertexId a, VertexId b) const { return tree(a)->path_to(b); }

  /// Early-exit query that bypasses the cache.
  double bounded(VertexId a, VertexId b, double limit) const {
    return bounded_distance(graph_, a, b, limit);
  }

 private:
  LengthGraph graph_;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<VertexId, std::shared_ptr<const ShortestPathTree>> cache_;
  mutable std::deque<VertexId> order_;
};

}  // namespace qhgeo
