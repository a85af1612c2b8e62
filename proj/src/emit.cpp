#include "sld/emit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sld {

using ordered_json = nlohmann::ordered_json;

std::string voltage_color(double kv) {
  if (kv == 500) return "rgb(255,0,0)";
  if (kv == 330) return "rgb(255,165,0)";
  if (kv == 220) return "rgb(0,128,255)";
  if (kv == 110) return "rgb(255,0,255)";
  if (kv == 35) return "rgb(154,205,50)";
  if (kv == 10) return "rgb(0,128,128)";
  return "rgb(128,128,128)";
}

namespace {

std::string kind_image(ComponentKind k) {
  std::string name{to_string(k)};
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return "symbols/" + name + ".json";
}

std::string voltage_text(double kv) {
  char buf[32];
  if (kv == std::floor(kv) && std::abs(kv) < 1e15)
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(kv));
  else
    std::snprintf(buf, sizeof buf, "%g", kv);
  return std::string(buf) + "kV";
}

bool state_of(SwitchStatus s) { return s != SwitchStatus::Open; }

ordered_json node_entry(const std::string& tag, const std::string& image, double x, double y,
                        bool state, double kv) {
  ordered_json e;
  e["p"]["position"]["y"] = y;
  e["p"]["position"]["x"] = x;
  e["p"]["tag"] = tag;
  e["p"]["image"] = image;
  e["c"] = "Node";
  e["a"]["state"] = state;
  e["a"]["voltage"] = voltage_text(kv);
  e["a"]["lineColor"] = voltage_color(kv);
  return e;
}

}  // namespace

std::string emit_layout_json(const LayoutDiagram& d) {
  ordered_json doc;
  doc["elements"] = ordered_json::array();
  auto& elems = doc["elements"];

  for (const BusSegment& b : d.buses) {
    ordered_json e = node_entry(b.bus, "symbols/bus.json", (b.x1 + b.x2) / 2, b.y,
                                state_of(b.status), b.level_kv);
    e["a"]["length"] = b.x2 - b.x1;
    elems.push_back(std::move(e));
  }
  for (const Placement& p : d.placements)
    elems.push_back(
        node_entry(p.component, kind_image(p.kind), p.x, p.y, state_of(p.status), p.level_kv));
  for (const Polyline& l : d.polylines) {
    ordered_json e;
    auto& pts = e["p"]["points"];
    pts = ordered_json::array();
    for (const Point& pt : l.points) {
      ordered_json q;
      q["x"] = pt.x;
      q["y"] = pt.y;
      pts.push_back(std::move(q));
    }
    e["p"]["tag"] = l.a + "--" + l.b;
    e["c"] = "Edge";
    e["a"]["lineColor"] = voltage_color(l.level_kv);
    elems.push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Inline glyphs, one per component kind, drawn in a 12x12 (24x24 for
// transformers) box centered on the origin. Switches carry an open variant.
void write_defs(std::ostream& os) {
  os << "  <defs>\n"
     << "    <g id=\"sym-breaker-closed\"><rect x=\"-6\" y=\"-6\" width=\"12\" height=\"12\" "
        "fill=\"currentColor\"/></g>\n"
     << "    <g id=\"sym-breaker-open\"><rect x=\"-6\" y=\"-6\" width=\"12\" height=\"12\" "
        "fill=\"none\"/></g>\n"
     << "    <g id=\"sym-disconnector-closed\"><line x1=\"0\" y1=\"-6\" x2=\"0\" y2=\"-2\"/>"
        "<line x1=\"0\" y1=\"-2\" x2=\"4\" y2=\"5\"/><line x1=\"0\" y1=\"6\" x2=\"0\" y2=\"2\"/>"
        "<circle cx=\"0\" cy=\"2\" r=\"1\" fill=\"currentColor\"/></g>\n"
     << "    <g id=\"sym-disconnector-open\"><line x1=\"0\" y1=\"-6\" x2=\"0\" y2=\"-3\"/>"
        "<line x1=\"0\" y1=\"-3\" x2=\"6\" y2=\"3\"/><line x1=\"0\" y1=\"6\" x2=\"0\" y2=\"3\"/>"
        "</g>\n"
     << "    <g id=\"sym-acline\"><line x1=\"0\" y1=\"-6\" x2=\"0\" y2=\"6\"/>"
        "<line x1=\"-4\" y1=\"6\" x2=\"4\" y2=\"6\"/></g>\n"
     << "    <g id=\"sym-load\"><path d=\"M 0 -6 L 0 2 M -4 2 L 4 2 L 0 6 Z\" "
        "fill=\"currentColor\"/></g>\n"
     << "    <g id=\"sym-transformer2w\"><circle cx=\"0\" cy=\"-5\" r=\"7\" fill=\"none\"/>"
        "<circle cx=\"0\" cy=\"5\" r=\"7\" fill=\"none\"/></g>\n"
     << "    <g id=\"sym-transformer3w\"><circle cx=\"0\" cy=\"-5\" r=\"7\" fill=\"none\"/>"
        "<circle cx=\"-5\" cy=\"5\" r=\"7\" fill=\"none\"/><circle cx=\"5\" cy=\"5\" r=\"7\" "
        "fill=\"none\"/></g>\n"
     << "    <g id=\"sym-compensator\"><line x1=\"0\" y1=\"-6\" x2=\"0\" y2=\"-2\"/>"
        "<line x1=\"-5\" y1=\"-2\" x2=\"5\" y2=\"-2\"/><line x1=\"-5\" y1=\"2\" x2=\"5\" "
        "y2=\"2\"/><line x1=\"0\" y1=\"2\" x2=\"0\" y2=\"6\"/></g>\n"
     << "    <g id=\"sym-genunit\"><circle cx=\"0\" cy=\"0\" r=\"6\" fill=\"none\"/>"
        "<path d=\"M 2 -2 L -2 -2 L -2 2 L 1 2 L 1 0\" fill=\"none\"/></g>\n"
     << "    <g id=\"sym-bus\"><line x1=\"-6\" y1=\"0\" x2=\"6\" y2=\"0\"/></g>\n"
     << "  </defs>\n";
}

std::string glyph_ref(const Placement& p) {
  std::string kind{to_string(p.kind)};
  for (char& c : kind) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (p.kind == ComponentKind::Breaker || p.kind == ComponentKind::Disconnector)
    return "sym-" + kind + (p.status == SwitchStatus::Open ? "-open" : "-closed");
  return "sym-" + kind;
}

}  // namespace

std::string emit_svg(const LayoutDiagram& d, const LayoutConfig& cfg) {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool init = false;
  auto grow = [&](double x, double y) {
    if (!init) {
      min_x = max_x = x;
      min_y = max_y = y;
      init = true;
      return;
    }
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  };
  for (const Placement& p : d.placements) {
    Extent e = cfg.extent(p.kind);
    double half = std::max(e.w, e.h) / 2.0;
    grow(p.x - half, p.y - half);
    grow(p.x + half, p.y + half);
  }
  for (const BusSegment& b : d.buses) {
    grow(b.x1, b.y);
    grow(b.x2, b.y);
  }
  for (const Polyline& l : d.polylines)
    for (const Point& pt : l.points) grow(pt.x, pt.y);

  double margin = cfg.region_margin;
  double vx = min_x - margin, vy = min_y - margin;
  double vw = (init ? max_x - min_x : 0) + 2 * margin;
  double vh = (init ? max_y - min_y : 0) + 2 * margin;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(vx) << " "
     << num(vy) << " " << num(vw) << " " << num(vh) << "\" width=\"" << num(vw) << "\" height=\""
     << num(vh) << "\">\n";
  write_defs(os);
  os << "  <g stroke-width=\"1.5\" fill=\"none\">\n";
  for (const BusSegment& b : d.buses)
    os << "    <line class=\"bus\" x1=\"" << num(b.x1) << "\" y1=\"" << num(b.y) << "\" x2=\""
       << num(b.x2) << "\" y2=\"" << num(b.y) << "\" stroke=\"" << voltage_color(b.level_kv)
       << "\" stroke-width=\"3\"><title>" << b.bus << "</title></line>\n";
  for (const Polyline& l : d.polylines) {
    os << "    <polyline points=\"";
    for (std::size_t i = 0; i < l.points.size(); ++i) {
      if (i) os << " ";
      os << num(l.points[i].x) << "," << num(l.points[i].y);
    }
    os << "\" stroke=\"" << voltage_color(l.level_kv) << "\"><title>" << l.a << "--" << l.b
       << "</title></polyline>\n";
  }
  for (const Placement& p : d.placements) {
    os << "    <use href=\"#" << glyph_ref(p) << "\" transform=\"translate(" << num(p.x) << " "
       << num(p.y) << ")";
    if (p.orientation != 0) os << " rotate(" << p.orientation << ")";
    os << "\" stroke=\"" << voltage_color(p.level_kv) << "\" color=\""
       << voltage_color(p.level_kv) << "\"><title>" << p.component << "</title></use>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace sld
