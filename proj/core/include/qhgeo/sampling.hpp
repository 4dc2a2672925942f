#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qhgeo/domain.hpp"

namespace qhgeo {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, n); n > 0.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

using Quadruple = std::array<VertexId, 4>;

/// `count` random distinct-vertex pairs drawn from `candidates`, grouped by
/// source: about sqrt(count) sources each with the same number of targets.
/// Grouping keeps shortest-path work to one tree per source.
std::vector<VertexPair> sample_pairs(std::span<const VertexId> candidates, std::size_t count,
                                     Rng& rng);

/// Random subset without replacement (or all candidates if count exceeds
/// their number), in ascending order.
std::vector<VertexId> sample_subset(std::span<const VertexId> candidates, std::size_t count,
                                    Rng& rng);

/// Quadruples of pairwise distinct vertices drawn from `pool`.
std::vector<Quadruple> sample_quadruples(std::span<const VertexId> pool, std::size_t count,
                                         Rng& rng);

/// Every vertex id of the domain, optionally only those with d_G >= margin.
std::vector<VertexId> interior_vertices(const DomainSample& domain, double margin = 0.0);

}  // namespace qhgeo
