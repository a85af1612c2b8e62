#include "sld/graph.hpp"

#include <algorithm>
#include <set>

namespace sld {

namespace {

ComponentKind component_kind(EntityKind k) {
  switch (k) {
    case EntityKind::Bus: return ComponentKind::Bus;
    case EntityKind::Breaker: return ComponentKind::Breaker;
    case EntityKind::Disconnector: return ComponentKind::Disconnector;
    case EntityKind::ACLine: return ComponentKind::ACLine;
    case EntityKind::Load: return ComponentKind::Load;
    case EntityKind::Transformer2W: return ComponentKind::Transformer2W;
    case EntityKind::Transformer3W: return ComponentKind::Transformer3W;
    case EntityKind::Compensator: return ComponentKind::Compensator;
    case EntityKind::GenUnit: return ComponentKind::GenUnit;
    case EntityKind::Substation: break;
  }
  throw GraphError(GraphErrorKind::UnknownComponent, "record kind has no component");
}

}  // namespace

std::string_view to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Bus: return "Bus";
    case ComponentKind::Breaker: return "Breaker";
    case ComponentKind::Disconnector: return "Disconnector";
    case ComponentKind::ACLine: return "ACLine";
    case ComponentKind::Load: return "Load";
    case ComponentKind::Transformer2W: return "Transformer2W";
    case ComponentKind::Transformer3W: return "Transformer3W";
    case ComponentKind::Compensator: return "Compensator";
    case ComponentKind::GenUnit: return "GenUnit";
  }
  return "Component";
}

const Component& SubstationGraph::component(const std::string& id) const {
  auto it = attributes.find(id);
  if (it == attributes.end())
    throw GraphError(GraphErrorKind::UnknownComponent, "unknown component " + id);
  return it->second;
}

SubstationGraph build_graph(const std::vector<Record>& records) {
  SubstationGraph g;

  for (const Record& r : records) {
    if (r.kind == EntityKind::Substation) continue;
    Component c;
    c.kind = component_kind(r.kind);
    c.id = std::string(to_string(c.kind)) + "#" + std::to_string(r.id);
    c.name = r.name;
    c.voltage_kv = r.volts;
    c.nodes = r.nodes;
    if (r.closed.has_value())
      c.status = *r.closed ? SwitchStatus::Closed : SwitchStatus::Open;
    if (c.kind == ComponentKind::ACLine && c.nodes.size() < 2) c.external_end = true;
    if (!g.attributes.emplace(c.id, c).second)
      throw GraphError(GraphErrorKind::DuplicateComponentId, "duplicate component " + c.id);
  }

  for (const auto& [id, c] : g.attributes)
    for (long long n : c.nodes) g.node_owner[n].push_back(id);
  for (auto& [node, owners] : g.node_owner) std::sort(owners.begin(), owners.end());

  // A node held by exactly one switching-device or 2W-transformer terminal
  // connects to nothing; that is broken input. ACLine far ends legitimately
  // leave the station, and an unused 3W tertiary winding is legal.
  for (const auto& [node, owners] : g.node_owner) {
    if (owners.size() != 1) continue;
    const Component& c = g.attributes.at(owners.front());
    if (c.kind == ComponentKind::Breaker || c.kind == ComponentKind::Disconnector ||
        c.kind == ComponentKind::Transformer2W)
      throw GraphError(GraphErrorKind::DanglingNode,
                       "node " + std::to_string(node) + " touches only " + c.id);
  }

  for (const auto& [id, c] : g.attributes) {
    std::set<std::string> nb;
    for (long long n : c.nodes)
      for (const std::string& other : g.node_owner.at(n))
        if (other != id) nb.insert(other);
    g.adjacency[id] = std::vector<std::string>(nb.begin(), nb.end());
  }
  return g;
}

const std::vector<std::string>& neighbors(const SubstationGraph& g,
                                          const std::string& component_id) {
  auto it = g.adjacency.find(component_id);
  if (it == g.adjacency.end())
    throw GraphError(GraphErrorKind::UnknownComponent, "unknown component " + component_id);
  return it->second;
}

}  // namespace sld
