#include "verifier/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "qhgeo/error.hpp"
#include "verifier/checks.hpp"

namespace qhgeo::verifier {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "is required");
  return obj.at(key);
}

std::string get_string(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = require(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "must be a string");
  return v.get<std::string>();
}

double as_real(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

Point2 as_point(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "must be a pair [x, y]");
  return {as_real(v[0], path + "[0]"), as_real(v[1], path + "[1]")};
}

void reject_unknown(const Json& obj, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) fail(path + "." + key, "unknown field");
  }
}

const std::map<ShapeKind, std::set<std::string>>& shape_params() {
  static const std::map<ShapeKind, std::set<std::string>> table = {
      {ShapeKind::kDisk, {"radius"}},
      {ShapeKind::kAnnulus, {"inner_radius", "radius"}},
      {ShapeKind::kSquare, {"side"}},
      {ShapeKind::kLShape, {"arm_width", "arm_length"}},
      {ShapeKind::kHalfPlane, {"truncation_radius"}},
      {ShapeKind::kPuncturedPlane, {"truncation_radius"}},
      {ShapeKind::kSector, {"radius", "angle"}},
      {ShapeKind::kPolygon, {"vertices"}},
  };
  return table;
}

ShapeSpec parse_shape(const Json& j, ShapeKind kind, const std::string& path) {
  reject_unknown(j, {"name", "kind", "params", "resolution", "exclusion_band"}, path);
  ShapeSpec spec;
  spec.kind = kind;
  spec.resolution = as_real(require(j, "resolution", path), path + ".resolution");
  if (j.contains("exclusion_band")) {
    spec.exclusion_band = as_real(j["exclusion_band"], path + ".exclusion_band");
  }
  const Json params = j.value("params", Json::object());
  if (!params.is_object()) fail(path + ".params", "must be an object");
  const std::string ppath = path + ".params";
  reject_unknown(params, shape_params().at(kind), ppath);
  auto real = [&](const char* key, double& out) {
    if (params.contains(key)) out = as_real(params[key], ppath + "." + key);
  };
  real("radius", spec.radius);
  real("inner_radius", spec.inner_radius);
  real("side", spec.side);
  real("arm_width", spec.arm_width);
  real("arm_length", spec.arm_length);
  real("truncation_radius", spec.truncation_radius);
  real("angle", spec.angle);
  if (params.contains("vertices")) {
    const Json& vs = params["vertices"];
    if (!vs.is_array()) fail(ppath + ".vertices", "must be an array of points");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      spec.polygon.push_back(as_point(vs[i], ppath + ".vertices[" + std::to_string(i) + "]"));
    }
  }
  try {
    make_shape(spec);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  if (!(spec.resolution > 0.0)) fail(path + ".resolution", "must be > 0");
  if (!(spec.exclusion_band >= 0.0)) fail(path + ".exclusion_band", "must be >= 0");
  return spec;
}

std::size_t as_index(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(path, "must be a non-negative integer");
  return v.get<std::size_t>();
}

GraphImport parse_graph(const Json& j, const std::string& path) {
  reject_unknown(j, {"name", "kind", "vertices", "edges", "boundary", "positions", "quasiconvexity"},
                 path);
  GraphImport g;
  g.vertex_count = as_index(require(j, "vertices", path), path + ".vertices");
  const Json& edges = require(j, "edges", path);
  if (!edges.is_array()) fail(path + ".edges", "must be an array of [u, v, length]");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = path + ".edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 3) fail(ep, "must be [u, v, length]");
    g.edges.push_back({static_cast<VertexId>(as_index(e[0], ep + "[0]")),
                       static_cast<VertexId>(as_index(e[1], ep + "[1]")),
                       as_real(e[2], ep + "[2]")});
  }
  const Json& boundary = require(j, "boundary", path);
  if (!boundary.is_array()) fail(path + ".boundary", "must be an array of vertex ids");
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    g.boundary.push_back(static_cast<VertexId>(
        as_index(boundary[i], path + ".boundary[" + std::to_string(i) + "]")));
  }
  if (j.contains("positions")) {
    const Json& ps = j["positions"];
    if (!ps.is_array() || ps.size() != g.vertex_count) {
      fail(path + ".positions", "must list one point per vertex");
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      g.positions.push_back(as_point(ps[i], path + ".positions[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("quasiconvexity")) {
    g.quasiconvexity = as_real(j["quasiconvexity"], path + ".quasiconvexity");
    if (g.quasiconvexity < 1.0) fail(path + ".quasiconvexity", "must be >= 1");
  }
  return g;
}

std::string describe(const ParamSpec& p) {
  std::string out;
  if (std::isfinite(p.lo)) out += (p.lo_open ? "> " : ">= ") + Json(p.lo).dump();
  if (std::isfinite(p.hi)) {
    if (!out.empty()) out += " and ";
    out += (p.hi_open ? "< " : "<= ") + Json(p.hi).dump();
  }
  return out;
}

bool in_range(const ParamSpec& p, double x) {
  if (p.lo_open ? !(x > p.lo) : !(x >= p.lo)) return false;
  if (p.hi_open ? !(x < p.hi) : !(x <= p.hi)) return false;
  return true;
}

Json resolve_param(const ParamSpec& p, const Json& v, const std::string& path,
                   const std::set<std::string>& spaces, const std::set<std::string>& deformations,
                   const std::set<std::string>& mappings) {
  switch (p.type) {
    case ParamType::kReal: {
      const double x = as_real(v, path);
      if (!in_range(p, x)) fail(path, "must be " + describe(p));
      return x;
    }
    case ParamType::kCount: {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) fail(path, "must be a positive integer");
      const double x = v.get<double>();
      if (!in_range(p, x)) fail(path, "must be " + describe(p));
      return v.get<std::uint64_t>();
    }
    case ParamType::kPoint: {
      const Point2 q = as_point(v, path);
      return Json::array({q.x, q.y});
    }
    case ParamType::kBool:
      if (!v.is_boolean()) fail(path, "must be true or false");
      return v;
    case ParamType::kSpace:
    case ParamType::kDeformation:
    case ParamType::kMapping: {
      if (!v.is_string()) fail(path, "must be a name");
      const std::string name = v.get<std::string>();
      const auto& pool = p.type == ParamType::kSpace         ? spaces
                         : p.type == ParamType::kDeformation ? deformations
                                                             : mappings;
      if (!pool.contains(name)) fail(path, "unknown name '" + name + "'");
      return name;
    }
    case ParamType::kChoice: {
      if (!v.is_string()) fail(path, "must be a string");
      const std::string s = v.get<std::string>();
      for (const auto& c : p.choices) {
        if (c == s) return s;
      }
      std::string options;
      for (const auto& c : p.choices) options += (options.empty() ? "" : ", ") + c;
      fail(path, "must be one of " + options);
    }
  }
  throw InternalError("unhandled parameter type");
}

}  // namespace

const std::vector<std::string>& map_ids() {
  static const std::vector<std::string> ids = {
      "identity", "similarity", "disk_automorphism", "power", "cayley",
      "inverse_cayley", "mobius", "deformation_identity"};
  return ids;
}

Scenario parse_scenario(const Json& doc) {
  const std::string root = "scenario";
  if (!doc.is_object()) fail(root, "must be a JSON object");
  reject_unknown(doc, {"schema", "name", "seed", "domains", "deformations", "mappings", "checks",
                       "tolerances", "description"},
                 root);
  const Json& schema = require(doc, "schema", root);
  if (!schema.is_number_integer() || schema.get<int>() != kScenarioSchema) {
    fail(root + ".schema", "must be " + std::to_string(kScenarioSchema));
  }
  Scenario s;
  s.name = get_string(doc, "name", root);
  const Json& seed = require(doc, "seed", root);
  if (!seed.is_number_unsigned()) fail(root + ".seed", "must be a non-negative integer");
  s.seed = seed.get<std::uint64_t>();

  std::set<std::string> names;
  auto claim = [&](const std::string& name, const std::string& path) {
    if (name.empty()) fail(path, "must not be empty");
    if (!names.insert(name).second) fail(path, "duplicate name '" + name + "'");
  };
  auto array_field = [&](const char* key) {
    const Json v = doc.value(key, Json::array());
    if (!v.is_array()) fail(root + "." + key, "must be an array");
    return v;
  };

  std::set<std::string> spaces;
  std::set<std::string> domain_names;
  std::set<std::string> deformation_names;
  std::set<std::string> mapping_names;

  const Json domains = array_field("domains");
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const std::string path = root + ".domains[" + std::to_string(i) + "]";
    DomainEntry d;
    d.name = get_string(domains[i], "name", path);
    claim(d.name, path + ".name");
    const std::string kind = get_string(domains[i], "kind", path);
    if (kind == "graph") {
      d.graph = parse_graph(domains[i], path);
    } else {
      const auto k = parse_shape_kind(kind);
      if (!k) fail(path + ".kind", "unknown shape kind '" + kind + "'");
      d.shape = parse_shape(domains[i], *k, path);
    }
    spaces.insert(d.name);
    domain_names.insert(d.name);
    s.domains.push_back(std::move(d));
  }

  const Json deformations = array_field("deformations");
  for (std::size_t i = 0; i < deformations.size(); ++i) {
    const std::string path = root + ".deformations[" + std::to_string(i) + "]";
    const Json& j = deformations[i];
    reject_unknown(j, {"name", "domain", "kind", "base_point", "epsilon", "pole"}, path);
    DeformationEntry e;
    e.name = get_string(j, "name", path);
    claim(e.name, path + ".name");
    e.domain = get_string(j, "domain", path);
    if (!domain_names.contains(e.domain)) fail(path + ".domain", "unknown domain '" + e.domain + "'");
    const std::string kind = get_string(j, "kind", path);
    if (kind == "bhk") {
      e.kind = DeformationKind::kBhk;
      if (j.contains("pole")) fail(path + ".pole", "only applies to sphericalization");
      if (j.contains("base_point")) e.base_point = as_point(j["base_point"], path + ".base_point");
      if (j.contains("epsilon")) e.epsilon = as_real(j["epsilon"], path + ".epsilon");
      if (!(e.epsilon > 0.0 && e.epsilon < 1.0)) fail(path + ".epsilon", "must lie in (0, 1)");
    } else if (kind == "sphericalization") {
      e.kind = DeformationKind::kSphericalization;
      if (j.contains("epsilon") || j.contains("base_point")) {
        fail(path, "epsilon and base_point only apply to bhk");
      }
      if (j.contains("pole")) e.pole = as_point(j["pole"], path + ".pole");
    } else {
      fail(path + ".kind", "must be bhk or sphericalization");
    }
    spaces.insert(e.name);
    deformation_names.insert(e.name);
    s.deformations.push_back(std::move(e));
  }

  const Json mappings = array_field("mappings");
  for (std::size_t i = 0; i < mappings.size(); ++i) {
    const std::string path = root + ".mappings[" + std::to_string(i) + "]";
    const Json& j = mappings[i];
    reject_unknown(j, {"name", "map", "params", "source", "target"}, path);
    MappingEntry m;
    m.name = get_string(j, "name", path);
    claim(m.name, path + ".name");
    m.map = get_string(j, "map", path);
    if (std::find(map_ids().begin(), map_ids().end(), m.map) == map_ids().end()) {
      fail(path + ".map", "unknown map '" + m.map + "'");
    }
    m.source = get_string(j, "source", path);
    m.target = get_string(j, "target", path);
    if (!spaces.contains(m.source)) fail(path + ".source", "unknown space '" + m.source + "'");
    if (!spaces.contains(m.target)) fail(path + ".target", "unknown space '" + m.target + "'");
    if (m.map != "deformation_identity" &&
        (!domain_names.contains(m.source) || !domain_names.contains(m.target))) {
      fail(path, "closed-form maps need undeformed source and target domains");
    }
    m.params = j.value("params", Json::object());
    if (!m.params.is_object()) fail(path + ".params", "must be an object");
    try {
      build_planar_map(m);
    } catch (const ConfigError& e) {
      fail(path + ".params", e.what());
    }
    mapping_names.insert(m.name);
    s.mappings.push_back(std::move(m));
  }

  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    reject_unknown(t, {"slack"}, root + ".tolerances");
    if (t.contains("slack")) {
      s.slack = as_real(t["slack"], root + ".tolerances.slack");
      if (!(s.slack > 0.0)) fail(root + ".tolerances.slack", "must be > 0");
    }
  }

  const Json checks = array_field("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = root + ".checks[" + std::to_string(i) + "]";
    const Json& j = checks[i];
    reject_unknown(j, {"id", "label", "params"}, path);
    CheckEntry c;
    c.id = get_string(j, "id", path);
    const auto* specs = check_params(c.id);
    if (!specs) fail(path + ".id", "unknown check '" + c.id + "'");
    c.label = j.contains("label") ? get_string(j, "label", path) : c.id;
    const Json given = j.value("params", Json::object());
    if (!given.is_object()) fail(path + ".params", "must be an object");
    std::set<std::string> known;
    for (const ParamSpec& p : *specs) known.insert(p.name);
    reject_unknown(given, known, path + ".params");
    for (const ParamSpec& p : *specs) {
      const std::string ppath = path + ".params." + p.name;
      if (given.contains(p.name)) {
        c.params[p.name] =
            resolve_param(p, given[p.name], ppath, spaces, deformation_names, mapping_names);
      } else if (!p.fallback.is_null()) {
        c.params[p.name] = p.fallback;
      } else if (p.required) {
        fail(ppath, "is required");
      }
    }
    s.checks.push_back(std::move(c));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("scenario " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

Json to_json(const Scenario& s) {
  Json out;
  out["schema"] = kScenarioSchema;
  out["name"] = s.name;
  out["seed"] = s.seed;
  out["domains"] = Json::array();
  for (const DomainEntry& d : s.domains) {
    Json j;
    j["name"] = d.name;
    if (d.shape) {
      const ShapeSpec& sp = *d.shape;
      j["kind"] = std::string(to_string(sp.kind));
      Json params = Json::object();
      const auto& keys = shape_params().at(sp.kind);
      auto put = [&](const char* key, double v) {
        if (keys.contains(key)) params[key] = v;
      };
      put("radius", sp.radius);
      put("inner_radius", sp.inner_radius);
      put("side", sp.side);
      put("arm_width", sp.arm_width);
      put("arm_length", sp.arm_length);
      put("truncation_radius", sp.truncation_radius);
      put("angle", sp.angle);
      if (keys.contains("vertices")) {
        params["vertices"] = Json::array();
        for (Point2 p : sp.polygon) params["vertices"].push_back({p.x, p.y});
      }
      j["params"] = params;
      j["resolution"] = sp.resolution;
      j["exclusion_band"] = sp.exclusion_band;
    } else {
      j["kind"] = "graph";
      j["vertices"] = d.graph->vertex_count;
      j["edge_count"] = d.graph->edges.size();
      j["boundary_count"] = d.graph->boundary.size();
    }
    out["domains"].push_back(j);
  }
  out["deformations"] = Json::array();
  for (const DeformationEntry& e : s.deformations) {
    Json j;
    j["name"] = e.name;
    j["domain"] = e.domain;
    if (e.kind == DeformationKind::kBhk) {
      j["kind"] = "bhk";
      if (e.base_point) {
        j["base_point"] = {e.base_point->x, e.base_point->y};
      } else {
        j["base_point"] = "deepest";
      }
      j["epsilon"] = e.epsilon;
    } else {
      j["kind"] = "sphericalization";
      j["pole"] = {e.pole.x, e.pole.y};
    }
    out["deformations"].push_back(j);
  }
  out["mappings"] = Json::array();
  for (const MappingEntry& m : s.mappings) {
    out["mappings"].push_back(
        {{"name", m.name}, {"map", m.map}, {"params", m.params}, {"source", m.source},
         {"target", m.target}});
  }
  out["checks"] = Json::array();
  for (const CheckEntry& c : s.checks) {
    out["checks"].push_back({{"id", c.id}, {"label", c.label}, {"params", c.params}});
  }
  out["tolerances"] = {{"slack", s.slack}};
  return out;
}

}  // namespace qhgeo::verifier
