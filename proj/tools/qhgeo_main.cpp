#include <charconv>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhgeo/constants.hpp"
#include "qhgeo/error.hpp"
#include "verifier/report.hpp"
#include "verifier/runner.hpp"

namespace {

using qhgeo::ConfigError;
using namespace qhgeo::verifier;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return v;
}

int run_constants(const std::string& step, const std::vector<std::string>& inputs) {
  std::map<std::string, double> values;
  for (const std::string& in : inputs) {
    const auto eq = in.find('=');
    if (eq == std::string::npos) throw ConfigError("--input " + in + ": expected name=value");
    values[in.substr(0, eq)] = parse_number(in.substr(eq + 1), "--input " + in.substr(0, eq));
  }
  const qhgeo::ConstantsLedger ledger = qhgeo::predicted_constants(step, values);
  Json j;
  j["step"] = ledger.step;
  for (const auto& [k, v] : ledger.inputs) j["inputs"][k] = v;
  for (const auto& [k, v] : ledger.derived) j["derived"][k] = v;
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasihyperbolic geometry verifier"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the checks of a scenario");
  std::string scenario_path;
  std::string report_path;
  std::string format = "json";
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  double resolution = 0.0;
  bool timings = false;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--report", report_path, "Report path (stdout when omitted)");
  run->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--jobs", jobs, "Checks run in parallel")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  auto* res_opt = run->add_option("--resolution-override", resolution,
                                  "Grid spacing for every shape domain")
                      ->check(CLI::PositiveNumber);
  run->add_flag("--timings", timings, "Record per-check runtimes (reports stop being byte-stable)");

  auto* constants = app.add_subcommand("constants", "Evaluate one predicted-constants step");
  std::string step;
  std::vector<std::string> inputs;
  constants->add_option("--step", step, "Step id")
      ->required()
      ->check(CLI::IsMember(qhgeo::ledger_steps()));
  constants->add_option("--input", inputs, "Input as name=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*constants) return run_constants(step, inputs);

    RunOptions options;
    options.jobs = jobs;
    options.timings = timings;
    if (*seed_opt) options.seed = seed;
    if (*res_opt) options.resolution = resolution;
    const Scenario scenario = load_scenario(scenario_path);
    const Report report = run_scenario(scenario, options);
    const ReportFormat fmt = format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson;
    if (report_path.empty()) {
      std::cout << (fmt == ReportFormat::kJson ? format_json(report) : format_csv(report));
    } else {
      write_report(report, fmt, report_path);
    }
    const Json& s = report.json.at("summary");
    std::cerr << scenario.name << ": " << s.at("passed") << " passed, " << s.at("failed")
              << " failed, " << s.at("errors") << " errors\n";
    return report.passed ? kExitPass : kExitViolation;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
}
