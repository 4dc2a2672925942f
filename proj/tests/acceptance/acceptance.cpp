// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Each criterion runs a small scenario through the verifier
// pipeline, so what is accepted is exactly what the CLI reports.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "verifier/runner.hpp"
#include "verifier/scenario.hpp"

namespace {

using qhgeo::verifier::Json;
using qhgeo::verifier::Report;
using qhgeo::verifier::RunOptions;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Json disk(const char* name, double h, double radius = 1.0) {
  return {{"name", name}, {"kind", "disk"}, {"params", {{"radius", radius}}}, {"resolution", h}};
}
Json square(const char* name, double h) {
  return {{"name", name}, {"kind", "square"}, {"params", {{"side", 1.0}}}, {"resolution", h}};
}
Json l_shape(const char* name, double h) {
  return {{"name", name},
          {"kind", "l_shape"},
          {"params", {{"arm_width", 1.0}, {"arm_length", 2.0}}},
          {"resolution", h}};
}
Json unbounded(const char* name, const char* kind, double truncation, double h) {
  return {{"name", name},
          {"kind", kind},
          {"params", {{"truncation_radius", truncation}}},
          {"resolution", h}};
}
Json check(const char* id, Json params, const char* label = nullptr) {
  Json c = {{"id", id}, {"params", std::move(params)}};
  if (label) c["label"] = label;
  return c;
}

Json scenario(const char* name, std::uint64_t seed, Json domains, Json checks,
              Json deformations = Json::array(), Json mappings = Json::array()) {
  return {{"schema", 1},         {"name", name},           {"seed", seed},
          {"domains", domains},  {"deformations", deformations},
          {"mappings", mappings}, {"checks", checks}};
}

Report run(const Json& doc, const RunOptions& options = {}) {
  return qhgeo::verifier::run_scenario(qhgeo::verifier::parse_scenario(doc), options);
}

// Every check must pass; failing labels are listed.
Verdict all_pass(const Report& r) {
  Verdict v;
  for (const Json& c : r.json.at("checks")) {
    if (c.at("status") == "pass") continue;
    v.pass = false;
    v.detail += (v.detail.empty() ? "" : ", ") + c.at("label").get<std::string>() + " " +
                c.at("status").get<std::string>();
  }
  if (v.pass) v.detail = std::to_string(r.json.at("checks").size()) + " checks pass";
  return v;
}

Json load(const char* file) {
  const std::filesystem::path p = std::filesystem::path(QHGEO_SCENARIO_DIR) / file;
  std::ifstream in(p);
  return Json::parse(in);
}

Verdict metric_axioms() {
  Json checks = Json::array();
  for (const char* s : {"disk", "square", "l_shape", "half_plane", "disk_bhk", "disk_sphere"}) {
    checks.push_back(check("metric_axioms", {{"space", s}, {"triples", 10000}}));
  }
  return all_pass(run(scenario(
      "metric_axioms", 11,
      {disk("disk", 0.02), square("square", 0.02), l_shape("l_shape", 0.02),
       unbounded("half_plane", "half_plane", 4.0, 0.02)},
      checks,
      {{{"name", "disk_bhk"}, {"domain", "disk"}, {"kind", "bhk"}, {"epsilon", 0.2}},
       {{"name", "disk_sphere"},
        {"domain", "disk"},
        {"kind", "sphericalization"},
        {"pole", {1.0, 0.0}}}})));
}

Verdict calibration() {
  return all_pass(run(scenario(
      "calibration", 12,
      {disk("disk", 0.01), unbounded("half_plane", "half_plane", 4.0, 0.02),
       unbounded("punctured", "punctured_plane", 4.0, 0.02)},
      {check("qh_calibration", {{"space", "disk"}, {"from", {0.0, 0.0}}, {"to", {0.5, 0.0}}},
             "disk radial"),
       check("qh_calibration",
             {{"space", "half_plane"}, {"from", {0.0, 1.0}}, {"to", {0.0, 2.718281828459045}}},
             "half-plane vertical"),
       check("qh_calibration", {{"space", "punctured"}, {"from", {0.5, 0.0}}, {"to", {2.0, 0.0}}},
             "punctured radial")})));
}

Verdict distance_bounds() {
  Json checks = Json::array();
  for (const char* s : {"disk", "square", "l_shape"}) {
    checks.push_back(check("qh_distance_bounds", {{"space", s}, {"pairs", 10000}, {"slack", 1.05}}));
  }
  return all_pass(run(scenario("distance_bounds", 13,
                               {disk("disk", 0.02), square("square", 0.02), l_shape("l_shape", 0.02)},
                               checks)));
}

Verdict ball_containment() {
  Json checks = Json::array();
  for (const char* s : {"disk", "square", "l_shape"}) {
    checks.push_back(check("ball_containment", {{"space", s}, {"centres", 100}}));
  }
  Verdict v = all_pass(run(scenario("ball_containment", 14,
                                    {disk("disk", 0.02), square("square", 0.02),
                                     l_shape("l_shape", 0.02)},
                                    checks)));
  if (!v.pass) return v;
  // Slack 0.3 below 1: radii grow by 1/0.3 and every shape must produce a witness.
  Json shrunk = Json::array();
  for (const char* s : {"disk", "square", "l_shape"}) {
    shrunk.push_back(
        check("ball_containment", {{"space", s}, {"centres", 100}, {"radius_factor", 1.0 / 0.3}}));
  }
  const Report r = run(scenario("ball_containment_slack", 14,
                                {disk("disk", 0.02), square("square", 0.02), l_shape("l_shape", 0.02)},
                                shrunk));
  for (const Json& c : r.json.at("checks")) {
    if (c.at("status") != "fail" || c.at("witnesses").empty()) {
      return {false, "no witness for " + c.at("label").get<std::string>() + " at slack 0.3"};
    }
  }
  v.detail += "; witnesses produced at slack 0.3";
  return v;
}

Verdict basepoint_identity() {
  Json checks = Json::array();
  for (const char* s : {"disk", "square", "l_shape", "half_plane", "punctured", "disk_bhk",
                        "disk_sphere"}) {
    checks.push_back(check("basepoint_identity", {{"space", s}, {"tuples", 100000}}));
  }
  return all_pass(run(scenario(
      "basepoint_identity", 15,
      {disk("disk", 0.02), square("square", 0.02), l_shape("l_shape", 0.02),
       unbounded("half_plane", "half_plane", 4.0, 0.05),
       unbounded("punctured", "punctured_plane", 4.0, 0.05)},
      checks,
      {{{"name", "disk_bhk"}, {"domain", "disk"}, {"kind", "bhk"}, {"epsilon", 0.2}},
       {{"name", "disk_sphere"},
        {"domain", "disk"},
        {"kind", "sphericalization"},
        {"pole", {1.0, 0.0}}}})));
}

Verdict bhk_diameter() {
  Json deformations = Json::array();
  Json checks = Json::array();
  for (double eps : {0.1, 0.2, 0.5}) {
    const std::string name = "bhk_" + std::to_string(eps).substr(0, 3);
    deformations.push_back({{"name", name}, {"domain", "disk"}, {"kind", "bhk"}, {"epsilon", eps}});
    checks.push_back(check("bhk_diameter_bound", {{"deformation", name}, {"slack", 1.05}}));
  }
  return all_pass(run(scenario("bhk_diameter", 16, {disk("disk", 0.02)}, checks, deformations)));
}

Verdict bhk_comparability() {
  return all_pass(run(scenario(
      "bhk_comparability", 17, {disk("disk", 0.02)},
      {check("bhk_comparability",
             {{"deformation", "bhk"}, {"pairs", 1000}, {"refine", true}, {"drift", 0.1}})},
      {{{"name", "bhk"}, {"domain", "disk"}, {"kind", "bhk"}, {"epsilon", 0.2}}})));
}

Verdict sphericalization() {
  return all_pass(run(scenario(
      "sphericalization", 18, {disk("disk", 0.02)},
      {check("sphericalization_quasimobius",
             {{"deformation", "sphere"}, {"quadruples", 1000}, {"slack", 1.05}})},
      {{{"name", "sphere"}, {"domain", "disk"}, {"kind", "sphericalization"}, {"pole", {1.0, 0.0}}}})));
}

Json automorphism_mappings() {
  return {{{"name", "auto"}, {"map", "disk_automorphism"}, {"params", {{"a", 0.5}}},
           {"source", "disk"}, {"target", "disk"}}};
}

Verdict relative_chain() {
  return all_pass(run(scenario("relative_chain", 19, {disk("disk", 0.02)},
                               {check("relative_semisolid_chain",
                                      {{"mapping", "auto"}, {"lambda", 0.5}, {"slack", 1.05}})},
                               Json::array(), automorphism_mappings())));
}

Verdict local_chain() {
  return all_pass(run(scenario("local_chain", 20, {disk("disk", 0.02)},
                               {check("local_distortion_chain",
                                      {{"mapping", "auto"}, {"t0", 0.5}, {"slack", 1.05}})},
                               Json::array(), automorphism_mappings())));
}

Verdict step_bound() {
  Json mappings = {
      {{"name", "auto"}, {"map", "disk_automorphism"}, {"params", {{"a", 0.5}}},
       {"source", "disk"}, {"target", "disk"}},
      {{"name", "square"}, {"map", "power"}, {"params", {{"alpha", 2.0}}},
       {"source", "quarter"}, {"target", "half"}}};
  const double pi = 3.141592653589793;
  Json domains = {disk("disk", 0.005),
                  {{"name", "quarter"},
                   {"kind", "sector"},
                   {"params", {{"radius", 1.0}, {"angle", pi / 2}}},
                   {"resolution", 0.005}},
                  {{"name", "half"},
                   {"kind", "sector"},
                   {"params", {{"radius", 1.0}, {"angle", pi}}},
                   {"resolution", 0.005}}};
  return all_pass(run(scenario(
      "step_bound", 21, domains,
      {check("qh_step_bound", {{"mapping", "auto"}, {"q", 0.5}, {"slack", 1.05}}, "disk automorphism"),
       check("qh_step_bound", {{"mapping", "square"}, {"q", 0.5}, {"slack", 1.05}}, "power map")},
      Json::array(), mappings)));
}

Verdict invariance() {
  Json domains = {disk("disk", 0.02), disk("disk_r2", 0.04, 2.0),
                  unbounded("half_plane", "half_plane", 3.0, 0.1)};
  Json mappings = {
      {{"name", "identity"}, {"map", "identity"}, {"source", "disk"}, {"target", "disk"}},
      {{"name", "auto"}, {"map", "disk_automorphism"}, {"params", {{"a", 0.5}}},
       {"source", "disk"}, {"target", "disk"}},
      {{"name", "auto_then_double"},
       {"map", "disk_automorphism"},
       {"params", {{"a", 0.5}, {"post", {{"map", "similarity"}, {"params", {{"scale", 2.0}}}}}}},
       {"source", "disk"},
       {"target", "disk_r2"}},
      {{"name", "halve_then_auto"},
       {"map", "disk_automorphism"},
       {"params", {{"a", 0.5}, {"pre", {{"map", "similarity"}, {"params", {{"scale", 0.5}}}}}}},
       {"source", "disk_r2"},
       {"target", "disk"}},
      {{"name", "cayley"}, {"map", "cayley"}, {"source", "half_plane"}, {"target", "disk"}}};
  return all_pass(run(scenario(
      "invariance", 22, domains,
      {check("neutral_estimators", {{"mapping", "identity"}}, "identity neutral"),
       check("neutral_estimators", {{"mapping", "auto_then_double"}, {"reference", "auto"},
                                    {"scale", 2.0}}, "post-composed similarity"),
       check("neutral_estimators", {{"mapping", "halve_then_auto"}, {"reference", "auto"},
                                    {"scale", 0.5}}, "pre-composed similarity"),
       check("quasimobius_envelope", {{"mapping", "auto"}, {"exact", true},
                                      {"exact_tolerance", 1e-9}}, "automorphism cross-ratio"),
       check("quasimobius_envelope", {{"mapping", "cayley"}, {"exact", true},
                                      {"exact_tolerance", 1e-9}}, "cayley cross-ratio")},
      Json::array(), mappings)));
}

Verdict determinism() {
  const Json doc = load("theorem1_disk_automorphism.json");
  RunOptions serial;
  RunOptions parallel;
  parallel.jobs = 3;
  const std::string a = run(doc, serial).json.dump(2);
  const std::string b = run(doc, serial).json.dump(2);
  const std::string c = run(doc, parallel).json.dump(2);
  if (a != b) return {false, "repeated serial runs differ"};
  if (a != c) return {false, "serial and 3-job runs differ"};
  return {true, "3 runs byte-identical (" + std::to_string(a.size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"metric axioms", metric_axioms},
      {"quasihyperbolic calibration", calibration},
      {"distance bound sweep", distance_bounds},
      {"ball containment", ball_containment},
      {"base-point identity", basepoint_identity},
      {"BHK diameter and base-point depth", bhk_diameter},
      {"BHK Gromov comparability", bhk_comparability},
      {"sphericalization quasimobius", sphericalization},
      {"relative/semisolid chain", relative_chain},
      {"local distortion chain", local_chain},
      {"quasihyperbolic step bound", step_bound},
      {"neutral and invariance suite", invariance},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
