#include "verifier/workspace.hpp"

#include <cmath>

#include "qhgeo/error.hpp"

namespace qhgeo::verifier {

namespace {

Complex param_complex(const Json& params, const std::string& map, const char* key,
                      Complex fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  const std::string path = "mapping " + map + ".params." + key;
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(path + ": must be a number or [re, im]");
}

double param_real(const Json& params, const std::string& map, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number()) {
    throw ConfigError("mapping " + map + ".params." + key + ": must be a number");
  }
  return params[key].get<double>();
}

}  // namespace

std::shared_ptr<const DomainSample> build_domain(const DomainEntry& entry, double resolution_scale,
                                                 double truncation_scale) {
  if (entry.graph) {
    if (resolution_scale != 1.0 || truncation_scale != 1.0) {
      throw ConfigError("domain " + entry.name + " is an imported graph and cannot be regridded");
    }
    return import_length_graph(*entry.graph);
  }
  ShapeSpec spec = *entry.shape;
  spec.resolution *= resolution_scale;
  spec.truncation_radius *= truncation_scale;
  try {
    return build_grid_domain(spec);
  } catch (const ConfigError& e) {
    throw ConfigError("domain " + entry.name + ": " + e.what());
  }
}

namespace {

std::shared_ptr<const PlanarMap> closed_form(const std::string& map, const Json& p,
                                             const std::string& n);

// Optional similarity-style wrappers: `pre` runs before the map, `post` after.
std::shared_ptr<const PlanarMap> wrap(std::shared_ptr<const PlanarMap> f, const Json& p,
                                      const std::string& n) {
  for (const char* key : {"pre", "post"}) {
    if (!p.contains(key)) continue;
    const Json& w = p[key];
    const std::string path = n + ".params." + key;
    if (!w.is_object() || !w.contains("map") || !w["map"].is_string()) {
      throw ConfigError("mapping " + path + ": must be an object with a \"map\" id");
    }
    for (const auto& [k, v] : w.items()) {
      if (k != "map" && k != "params") {
        throw ConfigError("mapping " + path + "." + k + ": unknown field");
      }
    }
    const std::string id = w["map"].get<std::string>();
    if (id == "deformation_identity") {
      throw ConfigError("mapping " + path + ": must be a closed-form map");
    }
    auto g = closed_form(id, w.value("params", Json::object()), path);
    f = std::string_view(key) == "pre" ? compose(g, f) : compose(f, g);
  }
  return f;
}

std::shared_ptr<const PlanarMap> closed_form(const std::string& map, const Json& all,
                                             const std::string& n) {
  Json p = all;
  p.erase("pre");
  p.erase("post");
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : p.items()) {
      bool ok = false;
      for (const char* k : keys) ok = ok || key == k;
      if (!ok) throw ConfigError("mapping " + n + ".params." + key + ": unknown field");
    }
  };
  std::shared_ptr<const PlanarMap> f;
  if (map == "identity") {
    allow({});
    f = identity_map();
  } else if (map == "similarity") {
    allow({"scale", "rotation", "translation"});
    const Complex t = param_complex(p, n, "translation", {});
    f = similarity_map(param_real(p, n, "scale", 1.0), param_real(p, n, "rotation", 0.0), {t.real(), t.imag()});
  } else if (map == "disk_automorphism") {
    allow({"a"});
    f = disk_automorphism(param_complex(p, n, "a", {}));
  } else if (map == "power") {
    allow({"alpha"});
    f = power_map(param_real(p, n, "alpha", 2.0));
  } else if (map == "cayley") {
    allow({});
    f = cayley_map();
  } else if (map == "inverse_cayley") {
    allow({});
    f = inverse_cayley_map();
  } else if (map == "mobius") {
    allow({"a", "b", "c", "d"});
    f = mobius_map(param_complex(p, n, "a", 1.0), param_complex(p, n, "b", 0.0),
                   param_complex(p, n, "c", 0.0), param_complex(p, n, "d", 1.0));
  } else {
    throw ConfigError("mapping " + n + ": unknown map '" + map + "'");
  }
  return wrap(std::move(f), all, n);
}

}  // namespace

std::shared_ptr<const PlanarMap> build_planar_map(const MappingEntry& e) {
  if (e.map == "deformation_identity") {
    if (!e.params.empty()) {
      throw ConfigError("mapping " + e.name + ".params: deformation_identity takes none");
    }
    return nullptr;
  }
  return closed_form(e.map, e.params, e.name);
}

VertexId bhk_base_vertex(const DeformationEntry& entry, const DomainSample& domain) {
  if (!entry.base_point) return domain.deepest_vertex();
  if (!domain.embedded()) {
    throw ConfigError("deformation " + entry.name + ": base_point needs an embedded domain");
  }
  const auto v = domain.nearest_vertex(*entry.base_point);
  if (!v) throw ConfigError("deformation " + entry.name + ": base_point is not near any vertex");
  return *v;
}

Workspace::Workspace(const Scenario& scenario) : scenario_(scenario) {
  for (const DomainEntry& d : scenario.domains) {
    Space s;
    s.name = d.name;
    s.domain = build_domain(d);
    s.qh = make_qh_metric(s.domain);
    s.origin = &d;
    spaces_.emplace(d.name, std::move(s));
  }
  for (const DeformationEntry& e : scenario.deformations) {
    const Space& base = spaces_.at(e.domain);
    Space s;
    s.name = e.name;
    s.origin = base.origin;
    s.deformation = &e;
    try {
      if (e.kind == DeformationKind::kBhk) {
        s.bhk = std::make_shared<const BhkSpace>(base.qh, bhk_base_vertex(e, *base.domain),
                                                 e.epsilon);
        s.domain = s.bhk->as_domain();
      } else {
        if (!base.domain->embedded()) {
          throw ConfigError("sphericalization needs an embedded domain");
        }
        s.sphere = std::make_shared<const SphericalSpace>(
            base.domain, nearest_boundary_sample(*base.domain, e.pole));
        s.domain = s.sphere->as_domain();
      }
    } catch (const ConfigError& err) {
      throw ConfigError("deformation " + e.name + ": " + err.what());
    }
    s.qh = make_qh_metric(s.domain);
    spaces_.emplace(e.name, std::move(s));
  }
  for (const MappingEntry& m : scenario.mappings) {
    MappingSlot slot;
    slot.entry = &m;
    const Space& src = spaces_.at(m.source);
    const Space& tgt = spaces_.at(m.target);
    try {
      slot.map = build_planar_map(m);
      if (slot.map) {
        slot.pair = std::make_shared<const MappingPair>(
            MappingPair::from_planar_map(src.qh, tgt.qh, slot.map));
      } else {
        if (src.origin != tgt.origin) {
          throw ConfigError("deformation_identity needs two spaces over the same domain");
        }
        slot.pair = std::make_shared<const MappingPair>(MappingPair::vertex_identity(src.qh, tgt.qh));
      }
    } catch (const ConfigError& err) {
      throw ConfigError("mapping " + m.name + ": " + err.what());
    }
    mappings_.emplace(m.name, std::move(slot));
  }
}

const Space& Workspace::space(const std::string& name) const {
  const auto it = spaces_.find(name);
  if (it == spaces_.end()) throw InternalError("unknown space " + name);
  return it->second;
}

const MappingSlot& Workspace::mapping(const std::string& name) const {
  const auto it = mappings_.find(name);
  if (it == mappings_.end()) throw InternalError("unknown mapping " + name);
  return it->second;
}

}  // namespace qhgeo::verifier
