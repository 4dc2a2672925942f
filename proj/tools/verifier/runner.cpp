#include "verifier/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "qhgeo/error.hpp"
#include "verifier/checks.hpp"
#include "verifier/workspace.hpp"

namespace qhgeo::verifier {

std::uint64_t check_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Scenario apply_overrides(Scenario scenario, const RunOptions& options) {
  if (options.seed) scenario.seed = *options.seed;
  if (options.resolution) {
    if (!(*options.resolution > 0.0)) throw ConfigError("--resolution-override: must be > 0");
    for (DomainEntry& d : scenario.domains) {
      if (d.shape) d.shape->resolution = *options.resolution;
    }
  }
  return scenario;
}

namespace {

Json defaults_json(const Scenario& scenario) {
  Json out = Json::object();
  out["pairs"] = 10000;
  out["balls"] = 1000;
  out["quadruples"] = 1000;
  Json per_check = Json::object();
  for (const CheckEntry& c : scenario.checks) {
    if (per_check.contains(c.id)) continue;
    Json d = Json::object();
    for (const ParamSpec& p : *check_params(c.id)) {
      if (!p.fallback.is_null()) d[p.name] = p.fallback;
    }
    per_check[c.id] = d;
  }
  out["checks"] = per_check;
  return out;
}

Json entry_json(std::size_t index, const CheckEntry& c, const CheckOutcome& o,
                std::optional<double> seconds) {
  Json j;
  j["index"] = index;
  j["id"] = c.id;
  j["label"] = c.label;
  j["status"] = std::string(to_string(o.status));
  j["params"] = c.params;
  j["measured"] = o.measured;
  j["predicted"] = o.predicted;
  j["skipped_degenerate"] = o.skipped;
  j["witnesses"] = o.witnesses;
  j["diagnostics"] = o.diagnostics;
  if (!o.message.empty()) j["message"] = o.message;
  if (seconds) j["runtime_seconds"] = *seconds;
  return j;
}

}  // namespace

Report run_scenario(const Scenario& input, const RunOptions& options) {
  const Scenario scenario = apply_overrides(input, options);
  const Workspace workspace(scenario);

  const std::size_t n = scenario.checks.size();
  std::vector<CheckOutcome> outcomes(n);
  std::vector<double> seconds(n, 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        CheckContext ctx;
        ctx.seed = check_seed(scenario.seed, i);
        ctx.slack = scenario.slack;
        outcomes[i] = run_check(scenario.checks[i], workspace, ctx);
        seconds[i] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Report report;
  Json& j = report.json;
  j["schema"] = kReportSchema;
  j["scenario"] = to_json(scenario);
  j["seed"] = scenario.seed;
  Json resolutions = Json::object();
  for (const DomainEntry& d : scenario.domains) {
    resolutions[d.name] = d.shape ? Json(d.shape->resolution) : Json(nullptr);
  }
  j["resolutions"] = resolutions;
  j["slack"] = scenario.slack;
  j["defaults"] = defaults_json(scenario);
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  Json checks = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const CheckOutcome& o = outcomes[i];
    if (o.status == CheckOutcome::Status::kFail && o.witnesses.empty()) {
      throw InternalError("check " + scenario.checks[i].id + " failed without a witness");
    }
    switch (o.status) {
      case CheckOutcome::Status::kPass: ++passed; break;
      case CheckOutcome::Status::kFail: ++failed; break;
      case CheckOutcome::Status::kError: ++errors; break;
    }
    checks.push_back(entry_json(i, scenario.checks[i], o,
                                options.timings ? std::optional(seconds[i]) : std::nullopt));
  }
  j["checks"] = checks;
  report.passed = failed == 0 && errors == 0;
  j["summary"] = {{"checks", n},
                  {"passed", passed},
                  {"failed", failed},
                  {"errors", errors},
                  {"status", report.passed ? "pass" : "fail"}};
  return report;
}

}  // namespace qhgeo::verifier
