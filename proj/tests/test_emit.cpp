#include <doctest.h>

#include "sld/emit.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sld/cime.hpp"
#include "sld/graph.hpp"
#include "sld/layout.hpp"

#include "fixtures.hpp"

using namespace sld;

namespace {

LayoutDiagram alpha_diagram() {
  ModelStore s = parse_cime(fixtures::kSingleBusFixture);
  SubstationGraph g = build_graph(s.substation_records("ALPHA"));
  LayoutConfig cfg;
  return layout_substation(g, "ALPHA", cfg);
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("voltage color table") {
  CHECK(voltage_color(500) == "rgb(255,0,0)");
  CHECK(voltage_color(330) == "rgb(255,165,0)");
  CHECK(voltage_color(220) == "rgb(0,128,255)");
  CHECK(voltage_color(110) == "rgb(255,0,255)");
  CHECK(voltage_color(35) == "rgb(154,205,50)");
  CHECK(voltage_color(10) == "rgb(0,128,128)");
  CHECK(voltage_color(66) == "rgb(128,128,128)");
}

TEST_CASE("node emission matches the frozen golden bytes") {
  LayoutDiagram d;
  d.substation = "GOLDEN";
  Placement p;
  p.component = "Disconnector#282";
  p.kind = ComponentKind::Disconnector;
  p.x = -458;
  p.y = -281;
  p.level_kv = 500;
  p.status = SwitchStatus::Closed;
  d.placements.push_back(p);

  auto j = nlohmann::ordered_json::parse(emit_layout_json(d));
  REQUIRE(j["elements"].size() == 1);

  std::ifstream in(std::string(SLD_TESTS_DIR) + "/golden/node_disconnector282.json");
  REQUIRE(in.good());
  std::stringstream frozen;
  frozen << in.rdbuf();
  CHECK(j["elements"][0].dump(2) + "\n" == frozen.str());
}

TEST_CASE("json element inventory") {
  LayoutDiagram d = alpha_diagram();
  auto j = nlohmann::ordered_json::parse(emit_layout_json(d));
  const auto& elems = j["elements"];
  std::size_t nodes = d.buses.size() + d.placements.size();
  REQUIRE(elems.size() == nodes + d.polylines.size());

  // Buses first, then symbols, then edges.
  for (std::size_t i = 0; i < elems.size(); ++i)
    CHECK(elems[i]["c"] == (i < nodes ? "Node" : "Edge"));

  const auto& bus = elems[0];
  CHECK(bus["p"]["tag"] == "Bus#11");
  CHECK(bus["p"]["image"] == "symbols/bus.json");
  CHECK(bus["a"]["voltage"] == "110kV");
  CHECK(bus["a"]["length"] == 144.0);
  // length stays the trailing attribute key
  std::string flat = bus["a"].dump();
  CHECK(flat.rfind("\"length\"") > flat.rfind("\"lineColor\""));

  for (const Placement& p : d.placements) {
    bool seen = false;
    for (std::size_t i = 1; i < nodes; ++i) {
      if (elems[i]["p"]["tag"] != p.component) continue;
      CHECK(elems[i]["p"]["position"]["x"] == p.x);
      CHECK(elems[i]["p"]["position"]["y"] == p.y);
      CHECK(elems[i]["a"]["state"] == (p.status != SwitchStatus::Open));
      seen = true;
    }
    CHECK(seen);
  }

  // y is serialized ahead of x.
  std::string pos = elems[1]["p"]["position"].dump();
  CHECK(pos.find("\"y\"") < pos.find("\"x\""));

  for (std::size_t i = nodes; i < elems.size(); ++i) {
    const auto& tag = elems[i]["p"]["tag"].get<std::string>();
    CHECK(tag.find("--") != std::string::npos);
    CHECK(elems[i]["p"]["points"].size() >= 2);
  }
}

TEST_CASE("json text ends with a newline and is indent-2") {
  LayoutDiagram d = alpha_diagram();
  std::string text = emit_layout_json(d);
  REQUIRE(!text.empty());
  CHECK(text.back() == '\n');
  CHECK(text.substr(0, 2) == "{\n");
  CHECK(text.find("  \"elements\"") == 2);
}

TEST_CASE("svg inventory") {
  LayoutConfig cfg;
  LayoutDiagram d = alpha_diagram();
  std::string svg = emit_svg(d, cfg);

  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") == 0);
  // frame: bbox of the single region
  const Rect& r = d.regions[0].bbox;
  std::ostringstream vb;
  vb << "viewBox=\"" << r.min_x << " " << r.min_y << " " << r.width() << " " << r.height()
     << "\"";
  CHECK(svg.find(vb.str()) != std::string::npos);

  CHECK(count_of(svg, "<line class=\"bus\"") == d.buses.size());
  CHECK(count_of(svg, "<polyline points=") == d.polylines.size());
  CHECK(count_of(svg, "<use href=") == d.placements.size());
  // every drawn element carries a hover title
  CHECK(count_of(svg, "<title>") == d.buses.size() + d.polylines.size() + d.placements.size());
  // no external references anywhere
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));
  CHECK(svg.find("https://") == std::string::npos);
}

TEST_CASE("open switches pick the open glyph") {
  ModelStore s = parse_cime(fixtures::kBypassFixture);
  SubstationGraph g = build_graph(s.substation_records("DELTA"));
  LayoutConfig cfg;
  LayoutDiagram d = layout_substation(g, "DELTA", cfg);
  std::string svg = emit_svg(d, cfg);
  CHECK(count_of(svg, "\"#sym-disconnector-open\"") == 2);  // the two bypass selectors

  auto j = nlohmann::ordered_json::parse(emit_layout_json(d));
  std::size_t off = 0;
  for (const auto& e : j["elements"])
    if (e["c"] == "Node" && e["a"].contains("state") && e["a"]["state"] == false) ++off;
  CHECK(off == 2);
}

TEST_CASE("fractional voltages format plainly") {
  LayoutDiagram d;
  d.substation = "X";
  Placement p;
  p.component = "Load#1";
  p.kind = ComponentKind::Load;
  p.x = 0;
  p.y = 0;
  p.level_kv = 10.5;
  p.status = SwitchStatus::NotApplicable;
  d.placements.push_back(p);
  auto j = nlohmann::ordered_json::parse(emit_layout_json(d));
  CHECK(j["elements"][0]["a"]["voltage"] == "10.5kV");
}

TEST_CASE("emission is deterministic end to end") {
  auto render = [] {
    LayoutConfig cfg;
    ModelStore s = parse_cime(fixtures::kThreeLevelFixture);
    SubstationGraph g = build_graph(s.substation_records("FOXTROT"));
    LayoutDiagram d = layout_substation(g, "FOXTROT", cfg);
    return emit_layout_json(d) + emit_svg(d, cfg);
  };
  CHECK(render() == render());
}
