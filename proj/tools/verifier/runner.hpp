#pragma once

#include <cstdint>
#include <optional>

#include "verifier/scenario.hpp"

namespace qhgeo::verifier {

inline constexpr int kReportSchema = 1;

struct RunOptions {
  std::optional<std::uint64_t> seed;        // replaces the scenario seed
  std::optional<double> resolution;         // replaces every grid spacing
  std::size_t jobs = 1;
  bool timings = false;                     // per-check runtimes break byte-stability
};

struct Report {
  Json json;
  bool passed = true;
};

/// Applies the overrides of `options` to a scenario.
Scenario apply_overrides(Scenario scenario, const RunOptions& options);

/// Builds the workspace and runs every check. Configuration problems in the
/// workspace throw ConfigError; per-check feasibility problems become error
/// entries and fail the run.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Per-check seed derived from the run seed and the check's position.
std::uint64_t check_seed(std::uint64_t seed, std::size_t index);

}  // namespace qhgeo::verifier
