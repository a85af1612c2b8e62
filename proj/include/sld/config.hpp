#pragma once

#include <array>
#include <string>

#include "sld/graph.hpp"

namespace sld {

struct Extent {
  double w = 12, h = 12;
};

/// Tunable geometry, all in abstract canvas units. Defaults are fixed so
/// emitted files are stable; every field can be overridden from a key=value
/// config file. Symbol extents default well under grid_unit so stacked
/// symbols keep the >= 1 unit clearance the validator demands.
struct LayoutConfig {
  double grid_unit = 20;
  double branch_gap = 40;
  double min_bus_length = 80;
  double region_margin = 60;

  Extent extent(ComponentKind k) const { return extents_[static_cast<int>(k)]; }
  void set_extent(ComponentKind k, Extent e) { extents_[static_cast<int>(k)] = e; }

  /// Applies one "key=value" override. Returns false for unknown keys or
  /// unparseable values.
  bool apply(const std::string& key, const std::string& value);

  /// Reads a config file of key=value lines ('#' comments allowed).
  /// Throws std::runtime_error naming the offending line.
  static LayoutConfig from_file(const std::string& path);

  LayoutConfig() {
    extents_.fill(Extent{12, 12});
    extents_[static_cast<int>(ComponentKind::Transformer2W)] = Extent{24, 24};
    extents_[static_cast<int>(ComponentKind::Transformer3W)] = Extent{24, 24};
  }

 private:
  std::array<Extent, 9> extents_{};
};

}  // namespace sld
