#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhgeo/domain.hpp"

namespace qhgeo::verifier {

using Json = nlohmann::ordered_json;

inline constexpr int kScenarioSchema = 1;

struct DomainEntry {
  std::string name;
  std::optional<ShapeSpec> shape;
  std::optional<GraphImport> graph;
};

enum class DeformationKind { kBhk, kSphericalization };

struct DeformationEntry {
  std::string name;
  std::string domain;
  DeformationKind kind = DeformationKind::kBhk;
  /// BHK base point (nearest vertex is used); deepest vertex when absent.
  std::optional<Point2> base_point;
  double epsilon = 0.2;
  /// Sphericalization pole: the boundary sample nearest to this point.
  Point2 pole{};
};

struct MappingEntry {
  std::string name;
  std::string map;
  std::string source;
  std::string target;
  Json params = Json::object();
};

struct CheckEntry {
  std::string id;
  std::string label;  // defaults to the id
  /// Parameters with every default filled in.
  Json params = Json::object();
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 1;
  std::vector<DomainEntry> domains;
  std::vector<DeformationEntry> deformations;
  std::vector<MappingEntry> mappings;
  std::vector<CheckEntry> checks;
  double slack = 1.05;
};

/// Validates the document and resolves every name; throws ConfigError with
/// the path of the offending field.
Scenario parse_scenario(const Json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form of a parsed scenario (defaults filled in).
Json to_json(const Scenario& scenario);

/// Ids understood by the map factory.
const std::vector<std::string>& map_ids();

}  // namespace qhgeo::verifier
