#pragma once

#include <map>
#include <string>
#include <vector>

#include "sld/cime.hpp"
#include "sld/error.hpp"

namespace sld {

enum class ComponentKind {
  Bus,
  Breaker,
  Disconnector,
  ACLine,
  Load,
  Transformer2W,
  Transformer3W,
  Compensator,
  GenUnit,
};

std::string_view to_string(ComponentKind k);

enum class SwitchStatus { Open, Closed, NotApplicable };

struct Component {
  std::string id;  // "<Kind>#<record id>", e.g. "Disconnector#282"
  ComponentKind kind{};
  std::string name;
  std::vector<double> voltage_kv;  // per winding for transformers
  SwitchStatus status = SwitchStatus::NotApplicable;
  std::vector<long long> nodes;
  bool external_end = false;  // ACLine whose far terminal leaves the station

  bool is_transformer() const {
    return kind == ComponentKind::Transformer2W || kind == ComponentKind::Transformer3W;
  }
};

/// Connectivity of one substation. Components are graph nodes; two components
/// are adjacent iff they share a connectivity node. Neighbor lists are
/// id-sorted so traversal order never depends on input order.
struct SubstationGraph {
  std::map<std::string, Component> attributes;
  std::map<std::string, std::vector<std::string>> adjacency;
  std::map<long long, std::vector<std::string>> node_owner;

  const Component& component(const std::string& id) const;
};

/// Builds the graph from one substation's records. Substation records are
/// skipped; every other record becomes exactly one component.
SubstationGraph build_graph(const std::vector<Record>& records);

/// Id-sorted neighbors of a component. Throws UnknownComponent.
const std::vector<std::string>& neighbors(const SubstationGraph& g, const std::string& component_id);

}  // namespace sld
