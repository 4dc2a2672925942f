#include "qhgeo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhgeo/error.hpp"

namespace qhgeo {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw InternalError("Rng::index on empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return static_cast<std::size_t>(r % bound);
}

std::vector<VertexPair> sample_pairs(std::span<const VertexId> candidates, std::size_t count,
                                     Rng& rng) {
  std::vector<VertexPair> out;
  if (candidates.size() < 2 || count == 0) return out;
  const auto sources = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t per_source = (count + sources - 1) / sources;
  out.reserve(count);
  for (std::size_t s = 0; s < sources && out.size() < count; ++s) {
    const VertexId x = candidates[rng.index(candidates.size())];
    for (std::size_t t = 0; t < per_source && out.size() < count; ++t) {
      VertexId y = candidates[rng.index(candidates.size())];
      while (y == x) y = candidates[rng.index(candidates.size())];
      out.emplace_back(x, y);
    }
  }
  return out;
}

std::vector<VertexId> sample_subset(std::span<const VertexId> candidates, std::size_t count,
                                    Rng& rng) {
  std::vector<VertexId> pool(candidates.begin(), candidates.end());
  if (count < pool.size()) {
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Quadruple> sample_quadruples(std::span<const VertexId> pool, std::size_t count,
                                         Rng& rng) {
  std::vector<Quadruple> out;
  if (pool.size() < 4) return out;
  out.reserve(count);
  while (out.size() < count) {
    Quadruple q{};
    for (std::size_t k = 0; k < 4; ++k) {
      bool fresh = false;
      while (!fresh) {
        q[k] = pool[rng.index(pool.size())];
        fresh = std::find(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(k), q[k]) ==
                q.begin() + static_cast<std::ptrdiff_t>(k);
      }
    }
    out.push_back(q);
  }
  return out;
}

std::vector<VertexId> interior_vertices(const DomainSample& domain, double margin) {
  std::vector<VertexId> out;
  out.reserve(domain.size());
  for (std::size_t v = 0; v < domain.size(); ++v) {
    if (domain.boundary_distance(static_cast<VertexId>(v)) >= margin) {
      out.push_back(static_cast<VertexId>(v));
    }
  }
  return out;
}

}  // namespace qhgeo
