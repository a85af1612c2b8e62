#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sld/config.hpp"
#include "sld/topology.hpp"

namespace sld {

struct Point {
  double x = 0, y = 0;
};

/// One drawn symbol. Coordinates are canvas units, origin at the canvas
/// center, x grows rightward and y grows downward.
struct Placement {
  std::string component;
  ComponentKind kind{};
  double x = 0, y = 0;
  int orientation = 0;  // degrees, one of 0/90/180/270
  double level_kv = 0;  // coloring level (max winding for transformers)
  double region_kv = 0; // region the placement belongs to
  SwitchStatus status = SwitchStatus::NotApplicable;
};

struct BusSegment {
  std::string bus;
  double x1 = 0, x2 = 0, y = 0;
  double level_kv = 0;
  SwitchStatus status = SwitchStatus::NotApplicable;
};

struct Polyline {
  std::string a, b;  // endpoint component/bus ids
  std::vector<Point> points;
  double level_kv = 0;
};

struct LayoutDiagram {
  std::string substation;
  std::vector<VoltageRegion> regions;  // bbox filled, descending kV
  std::vector<BusSegment> buses;
  std::vector<Placement> placements;   // sorted by component id
  std::vector<Polyline> polylines;     // sorted by (a, b)
  std::vector<std::string> warnings;

  /// Width lists the engine used per bus and side, in slot order; the drawn
  /// segment length equals the bus-length equation over exactly these lists.
  std::map<std::string, std::vector<double>> up_widths;
  std::map<std::string, std::vector<double>> down_widths;

  const Placement* find(const std::string& component_id) const;
};

struct Size {
  double w = 0, h = 0;
};

/// Nominal region frames for 1-4 regions (descending kV with matching sizes):
/// 1 fills the canvas; 2 stack highest-over-lower; 3 put the highest on top
/// spanning the full width and the two lower side by side, higher left;
/// 4 form a 2x2 grid, descending kV left-to-right then top-to-bottom.
std::vector<Rect> place_voltage_regions(const std::vector<VoltageRegion>& regions,
                                        const std::vector<Size>& sizes,
                                        const LayoutConfig& cfg);

/// length = max(side(up), side(down), min_bus_length) where
/// side(ws) = sum(ws) + branch_gap * (len(ws) + 1).
double compute_bus_length(const std::vector<double>& up_widths,
                          const std::vector<double>& down_widths,
                          const LayoutConfig& cfg);

/// Horizontal extent the branch will occupy when placed. Shares the single
/// placement code path, so the value is exact, not an estimate.
double dry_run_branch_width(const SubstationGraph& g, const Branch& b, const LayoutConfig& cfg);

/// Full pipeline for one substation: regions, schemes, branches, directions,
/// symbol placement, transformer placement, connectors.
/// Throws LayoutError (TooManyLevels, NoBuses).
LayoutDiagram layout_substation(const SubstationGraph& g, const std::string& substation,
                                const LayoutConfig& cfg);

}  // namespace sld
