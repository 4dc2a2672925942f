#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "verifier/scenario.hpp"
#include "verifier/workspace.hpp"

namespace qhgeo::verifier {

enum class ParamType { kReal, kCount, kPoint, kBool, kSpace, kDeformation, kMapping, kChoice };

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::kReal;
  /// Default value; null means the parameter is optional with no default.
  Json fallback;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;
  std::vector<std::string> choices;  // kChoice
  bool required = false;
};

const std::vector<std::string>& check_ids();
/// Parameter table of a check id, or nullptr when unknown.
const std::vector<ParamSpec>* check_params(std::string_view id);

struct CheckOutcome {
  enum class Status { kPass, kFail, kError };
  Status status = Status::kPass;
  Json measured = Json::object();
  Json predicted = Json::object();
  Json diagnostics = Json::object();
  Json witnesses = Json::array();
  std::size_t skipped = 0;
  std::string message;
};

std::string_view to_string(CheckOutcome::Status status);

struct CheckContext {
  std::uint64_t seed = 1;  // already mixed with the check index
  double slack = 1.05;
};

/// Runs one check. Feasibility problems (ConfigError from an estimator)
/// become an error outcome rather than propagating.
CheckOutcome run_check(const CheckEntry& check, const Workspace& workspace,
                       const CheckContext& context);

}  // namespace qhgeo::verifier
