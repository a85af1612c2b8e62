#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sld/graph.hpp"

namespace sld {

enum class BusScheme {
  SingleBus,
  DoubleBusSingleBreaker,
  SingleBusWithSectionalizer,
  MainAndBypass,
  BreakerAndHalfOrDBDB,
  UnrecognizedScheme,
};

std::string_view to_string(BusScheme s);

struct Rect {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

struct VoltageRegion {
  double level_kv = 0;
  std::vector<std::string> buses;  // id-sorted bus component ids
  BusScheme scheme = BusScheme::SingleBus;
  /// When the scheme is MainAndBypass: the bus adjacent to the two
  /// consecutive disconnectors of the tie paths.
  std::optional<std::string> bypass_bus;
  Rect bbox;  // frame, filled by the layout engine
};

/// One region per distinct bus voltage, descending kV. Levels that appear
/// only on transformer windings do not form regions. Throws TooManyLevels
/// for more than four levels and NoBuses when the graph has no bus.
std::vector<VoltageRegion> group_voltage_levels(const SubstationGraph& g);

enum class BranchDirection { Up, Down };

/// A maximal set of components reachable from one component sitting directly
/// on a bus, without passing through a bus or beyond a transformer.
/// Transformers terminate a branch but belong to it.
struct Branch {
  std::string head;
  std::vector<std::string> members;  // DFS pre-order, id-sorted children
  /// DFS tree over members: member id -> child member ids in visit order.
  std::map<std::string, std::vector<std::string>> children;
  std::string owner_bus;
  std::optional<std::string> other_bus;  // set when the branch reaches a second bus
  /// Members whose connectivity node touches a bus other than the owner,
  /// mapped to that bus id. Used to draw tie connectors.
  std::map<std::string, std::string> bus_taps;
  BranchDirection direction = BranchDirection::Up;  // assigned by the layout engine

  bool contains_kind(const SubstationGraph& g, ComponentKind k) const;
};

enum class SubBranchSlot { Continue, Right };

struct SubBranch {
  std::string parent;  // junction member the sub-branch hangs off
  std::vector<std::string> members;
  SubBranchSlot slot = SubBranchSlot::Right;
};

/// One Branch per component directly connected to the bus. Deterministic:
/// heads in id order, members in DFS pre-order with id-sorted children.
std::vector<Branch> find_branches(const SubstationGraph& g, const std::string& bus_id);

/// The child chosen to continue straight at a junction: for inter-bus
/// branches the subtree that reaches the far bus, otherwise the subtree with
/// the greatest member count (ties broken by smaller id).
std::string continue_child(const SubstationGraph& g, const Branch& b, const std::string& junction);

/// Junction expansion of a branch, in spine order.
std::vector<SubBranch> sub_branches(const SubstationGraph& g, const Branch& b);

/// Owner of a (possibly shared) branch: the attached bus whose id sorts first.
std::string assign_branch_owner(const Branch& b);

/// Kind sequences of all simple inter-bus paths (no interior bus or
/// transformer), each read from bus_a to bus_b. Deterministic order.
std::vector<std::vector<ComponentKind>> inter_bus_paths(const SubstationGraph& g,
                                                        const std::string& bus_a,
                                                        const std::string& bus_b);

/// Classifies the busbar scheme of one region. Never throws: inputs outside
/// the recognized signatures yield UnrecognizedScheme plus a diagnostic.
BusScheme classify_scheme(const SubstationGraph& g, VoltageRegion& region,
                          std::vector<std::string>* diagnostics = nullptr);

/// All distinct branches of a region with shared duplicates removed:
/// for a branch seen from both buses, the version owned by the id-first bus
/// is kept. Returned in (owner bus, head id) order.
std::vector<Branch> region_branches(const SubstationGraph& g, const VoltageRegion& region);

}  // namespace sld
