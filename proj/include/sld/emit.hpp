#pragma once

#include <string>

#include "sld/config.hpp"
#include "sld/layout.hpp"

namespace sld {

/// Dispatch color for a voltage level, as an "rgb(r,g,b)" string.
/// 500 red, 330 orange, 220 blue, 110 magenta, 35 yellow-green, 10 teal,
/// anything else gray.
std::string voltage_color(double kv);

/// Serializes a diagram to the renderer JSON: {"elements": [...]} holding
/// Node entries (p/c/a key order, y before x) for buses and symbols followed
/// by Edge entries for connectors. Byte-stable for equal diagrams.
std::string emit_layout_json(const LayoutDiagram& d);

/// Standalone SVG with one inline symbol library; no external references.
std::string emit_svg(const LayoutDiagram& d, const LayoutConfig& cfg);

}  // namespace sld
