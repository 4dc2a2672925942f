#pragma once

#include <map>
#include <memory>
#include <string>

#include "qhgeo/deformations.hpp"
#include "qhgeo/mapping.hpp"
#include "verifier/scenario.hpp"

namespace qhgeo::verifier {

/// A named metric space of the scenario: a grid or imported domain, or a
/// deformation of one.
struct Space {
  std::string name;
  std::shared_ptr<const DomainSample> domain;
  std::shared_ptr<const QuasihyperbolicMetric> qh;
  std::shared_ptr<const BhkSpace> bhk;
  std::shared_ptr<const SphericalSpace> sphere;
  /// Undeformed domain entry this space derives from.
  const DomainEntry* origin = nullptr;
  const DeformationEntry* deformation = nullptr;
};

struct MappingSlot {
  const MappingEntry* entry = nullptr;
  std::shared_ptr<const PlanarMap> map;  // null for vertex correspondences
  std::shared_ptr<const MappingPair> pair;
};

/// Every space and mapping of a scenario, built once before checks run and
/// read-only afterwards.
class Workspace {
 public:
  explicit Workspace(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  /// Throws InternalError on an unknown name (names are validated on parse).
  const Space& space(const std::string& name) const;
  const MappingSlot& mapping(const std::string& name) const;

 private:
  const Scenario& scenario_;
  std::map<std::string, Space> spaces_;
  std::map<std::string, MappingSlot> mappings_;
};

/// Grid domain of an entry with resolution and truncation radius scaled.
std::shared_ptr<const DomainSample> build_domain(const DomainEntry& entry,
                                                 double resolution_scale = 1.0,
                                                 double truncation_scale = 1.0);

/// Closed-form map of a mapping entry; null for `deformation_identity`.
std::shared_ptr<const PlanarMap> build_planar_map(const MappingEntry& entry);

/// BHK base point of a deformation entry on a given domain.
VertexId bhk_base_vertex(const DeformationEntry& entry, const DomainSample& domain);

}  // namespace qhgeo::verifier
