#include "qhgeo/constants.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qhgeo/error.hpp"

namespace qhgeo {

double ConstantsLedger::at(std::string_view name) const {
  for (const auto& [key, value] : derived) {
    if (key == name) return value;
  }
  throw InternalError("ledger " + step + " has no value " + std::string(name));
}

namespace {

enum class Range {
  kAtLeastOne,      // [1, inf)
  kOpenUnit,        // (0, 1)
  kHalfOpenUnit,    // (0, 1]
  kPositive,        // (0, inf)
};

class Inputs {
 public:
  Inputs(std::string_view step, const std::map<std::string, double>& values,
         ConstantsLedger& ledger)
      : step_(step), values_(values), ledger_(ledger) {}

  double get(const std::string& name, Range range) {
    const auto it = values_.find(name);
    if (it == values_.end()) fail(name, "is required");
    const double v = it->second;
    bool ok = std::isfinite(v);
    switch (range) {
      case Range::kAtLeastOne: ok = ok && v >= 1.0; break;
      case Range::kOpenUnit: ok = ok && v > 0.0 && v < 1.0; break;
      case Range::kHalfOpenUnit: ok = ok && v > 0.0 && v <= 1.0; break;
      case Range::kPositive: ok = ok && v > 0.0; break;
    }
    if (!ok) {
      static constexpr const char* kRange[] = {">= 1", "in (0, 1)", "in (0, 1]", "> 0"};
      fail(name, std::string("must be ") + kRange[static_cast<int>(range)]);
    }
    ledger_.inputs.emplace_back(name, v);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& name, const std::string& why) const {
    throw ConfigError("constants step " + std::string(step_) + ": input " + name + " " + why);
  }

  std::string_view step_;
  const std::map<std::string, double>& values_;
  ConstantsLedger& ledger_;
};

using StepFn = std::function<void(Inputs&, ConstantsLedger&)>;

const std::vector<std::pair<std::string, StepFn>>& steps() {
  static const std::vector<std::pair<std::string, StepFn>> table = {
      {"relative_from_partial_lipschitz",
       [](Inputs& in, ConstantsLedger& out) {
         const double L = in.get("L", Range::kAtLeastOne);
         const double lambda = in.get("lambda", Range::kOpenUnit);
         out.derived = {{"c1", L}, {"t0", lambda}};
       }},
      {"semisolid_from_relative",
       [](Inputs& in, ConstantsLedger& out) {
         const double c = in.get("c", Range::kAtLeastOne);
         const double c1 = in.get("c1", Range::kAtLeastOne);
         const double t0 = in.get("t0", Range::kHalfOpenUnit);
         const double t1 = std::min(std::log(t0 / 2.0 + 1.0), std::log(1.0 + 1.0 / (3.0 * c1 * c)));
         out.derived = {{"t1", t1}, {"c2", 24.0 * c * c1 / t1}};
       }},
      {"partial_lipschitz_from_semisolid",
       [](Inputs& in, ConstantsLedger& out) {
         const double c = in.get("c", Range::kAtLeastOne);
         const double c2 = in.get("c2", Range::kAtLeastOne);
         out.derived = {{"lambda", 1.0 / (36.0 * c * c * c2)}, {"L", 24.0 * c * c2}};
       }},
      {"local_bilipschitz_from_relative",
       [](Inputs& in, ConstantsLedger& out) {
         const double c1 = in.get("c1", Range::kAtLeastOne);
         const double t0 = in.get("t0", Range::kHalfOpenUnit);
         out.derived = {{"theta1", t0 / (8.0 * c1)}, {"L1", 4.0 * c1}};
       }},
      {"local_qs_from_local_bilipschitz",
       [](Inputs& in, ConstantsLedger& out) {
         const double theta1 = in.get("theta1", Range::kOpenUnit);
         const double L1 = in.get("L1", Range::kAtLeastOne);
         out.derived = {{"q", theta1}, {"eta_slope", L1 * L1}};
       }},
      {"partial_bilipschitz_from_local_qs",
       [](Inputs& in, ConstantsLedger& out) {
         const double c = in.get("c", Range::kAtLeastOne);
         const double c2 = in.get("c2", Range::kAtLeastOne);
         const double q = in.get("q", Range::kOpenUnit);
         const double q1 = std::min(1.0 / (2.0 + c), q / 2.0);
         out.derived = {{"q1", q1}, {"L", 8.0 * c * c2 / q1}, {"lambda", q1 / (2.0 * c * c2)}};
       }},
      {"qh_step_bound",
       [](Inputs& in, ConstantsLedger& out) {
         const double A = in.get("A", Range::kAtLeastOne);
         const double q = in.get("q", Range::kOpenUnit);
         const double slope = in.get("eta_slope", Range::kPositive);
         const double q1 = q / 2.0;
         // eta(t) = slope * t, so eta^{-1}(1/(4A)) = 1/(4 A slope).
         const double t1 =
             std::min(std::log(1.0 + q1 / (4.0 * A * slope)), std::log(1.0 + q / 2.0));
         out.derived = {{"q1", q1}, {"t1", t1}, {"step_bound", 4.0 * A * A * std::numbers::ln2}};
       }},
  };
  return table;
}

}  // namespace

ConstantsLedger predicted_constants(std::string_view step,
                                    const std::map<std::string, double>& inputs) {
  for (const auto& [name, fn] : steps()) {
    if (name != step) continue;
    ConstantsLedger ledger;
    ledger.step = name;
    Inputs in(step, inputs, ledger);
    fn(in, ledger);
    return ledger;
  }
  throw ConfigError("unknown constants step: " + std::string(step));
}

std::vector<std::string> ledger_steps() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : steps()) out.push_back(name);
  return out;
}

}  // namespace qhgeo
