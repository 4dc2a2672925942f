#include "qhgeo/graph_metric.hpp"

#include <algorithm>

namespace qhgeo {

GraphMetric::GraphMetric(LengthGraph graph, std::size_t cache_bytes)
    : graph_(std::move(graph)) {
  const std::size_t per_tree =
      std::max<std::size_t>(1, graph_.vertex_count() * (sizeof(double) + sizeof(VertexId)));
  capacity_ = std::max<std::size_t>(4, cache_bytes / per_tree);
}

std::shared_ptr<const ShortestPathTree> GraphMetric::tree(VertexId source) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(source); it != cache_.end()) return it->second;
  }
  // Computed outside the lock; two threads racing on the same source produce
  // identical trees and the first insertion wins.
  auto computed = std::make_shared<const ShortestPathTree>(shortest_path_tree(graph_, source));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(source, computed);
  if (inserted) {
    order_.push_back(source);
    while (order_.size() > capacity_) {
      cache_.erase(order_.front());
      order_.pop_front();
    }
  }
  return it->second;
}

}  // namespace qhgeo
