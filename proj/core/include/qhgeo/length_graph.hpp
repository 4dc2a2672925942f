#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace qhgeo {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double length = 0.0;
};

struct Arc {
  VertexId to = 0;
  double length = 0.0;
};

/// Undirected graph with positive edge lengths, stored as a CSR adjacency.
///
/// Arcs out of each vertex are sorted by target index, so every traversal
/// is deterministic for a given edge list.
class LengthGraph {
 public:
  LengthGraph() = default;

  /// Throws ConfigError on self loops, out-of-range endpoints or
  /// non-positive / non-finite lengths. Duplicate edges keep the shorter one.
  LengthGraph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return arcs_.size() / 2; }

  std::span<const Arc> neighbors(VertexId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  bool is_connected() const;

  /// Edges with u < v, in CSR order.
  std::vector<Edge> edges() const;

  /// Same topology with new lengths. `weight(u, v, length)` is always called
  /// with u < v so both arc directions receive bit-identical values.
  template <class WeightFn>
  LengthGraph reweighted(WeightFn&& weight) const {
    LengthGraph out = *this;
    for (std::size_t u = 0; u + 1 < offsets_.size(); ++u) {
      for (std::size_t a = offsets_[u]; a < offsets_[u + 1]; ++a) {
        const auto vu = static_cast<VertexId>(u);
        const VertexId vv = arcs_[a].to;
        out.arcs_[a].length = vu < vv ? weight(vu, vv, arcs_[a].length)
                                       : weight(vv, vu, arcs_[a].length);
      }
    }
    out.validate_lengths();
    return out;
  }

 private:
  void validate_lengths() const;

  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

/// Single-source shortest paths. Ties between equal-length predecessors are
/// broken towards the lowest vertex index.
struct ShortestPathTree {
  VertexId source = kNoVertex;
  std::vector<double> distance;
  std::vector<VertexId> parent;

  /// Vertex sequence source -> target. Throws InternalError if unreachable.
  std::vector<VertexId> path_to(VertexId target) const;
};

ShortestPathTree shortest_path_tree(const LengthGraph& graph, VertexId source);

/// Multi-source distances: each seed (v, offset) starts at distance `offset`.
std::vector<double> shortest_distances(const LengthGraph& graph,
                                       std::span<const std::pair<VertexId, double>> seeds);

/// Distance from source to target, stopping early once target is settled or
/// the frontier exceeds `limit`. Returns kUnreachable past the limit.
double bounded_distance(const LengthGraph& graph, VertexId source, VertexId target,
                        double limit);

/// All vertices within graph distance <= radius of source, with distances,
/// in settle order.
std::vector<std::pair<VertexId, double>> graph_ball(const LengthGraph& graph, VertexId source,
                                                    double radius);

}  // namespace qhgeo
