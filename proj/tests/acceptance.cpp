// Acceptance gate for the layout toolkit. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sld/batch.hpp"
#include "sld/cime.hpp"
#include "sld/cli.hpp"
#include "sld/emit.hpp"
#include "sld/graph.hpp"
#include "sld/layout.hpp"
#include "sld/synth.hpp"
#include "sld/topology.hpp"
#include "sld/validate.hpp"

#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace sld;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

LayoutDiagram lay_out(const char* text, const char* name, const LayoutConfig& cfg) {
  ModelStore s = parse_cime(text);
  SubstationGraph g = build_graph(s.substation_records(name));
  return layout_substation(g, name, cfg);
}

// 1. The five busbar arrangements are recognized from their models.
void criterion_scheme_recognition() {
  auto t0 = Clock::now();
  struct Case {
    const char* text;
    const char* name;
    BusScheme want;
  };
  const Case cases[] = {
      {fixtures::kSingleBusFixture, "ALPHA", BusScheme::SingleBus},
      {fixtures::kDoubleBusFixture, "BRAVO", BusScheme::DoubleBusSingleBreaker},
      {fixtures::kSectionalizerFixture, "CHARLIE", BusScheme::SingleBusWithSectionalizer},
      {fixtures::kBypassFixture, "DELTA", BusScheme::MainAndBypass},
      {fixtures::kBreakerAndHalfFixture, "ECHO", BusScheme::BreakerAndHalfOrDBDB},
  };
  int good = 0;
  std::string miss;
  for (const Case& c : cases) {
    ModelStore s = parse_cime(c.text);
    SubstationGraph g = build_graph(s.substation_records(c.name));
    auto regions = group_voltage_levels(g);
    if (regions.size() == 1 && classify_scheme(g, regions[0]) == c.want) {
      ++good;
    } else if (miss.empty()) {
      miss = std::string(" first miss: ") + c.name;
    }
  }
  double ms = ms_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "busbar schemes recognized %d/5%s (%.0f ms)", good, miss.c_str(),
                ms);
  report(1, good == 5 && ms < 1000.0, buf);
}

// 2. Node serialization is byte-stable against the frozen golden file.
void criterion_golden_node() {
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

  std::ifstream in(std::string(SLD_TESTS_DIR) + "/golden/node_disconnector282.json");
  std::stringstream frozen;
  frozen << in.rdbuf();

  auto j = nlohmann::ordered_json::parse(emit_layout_json(d));
  bool ok = in.good() && j["elements"].size() == 1 &&
            j["elements"][0].dump(2) + "\n" == frozen.str();
  report(2, ok, "node JSON matches the frozen golden bytes");
}

// 3. A 200-station synthetic corpus parses, lays out and validates clean.
void criterion_corpus() {
  auto t0 = Clock::now();
  SynthOptions so;
  so.seed = 20260818;
  so.count = 200;
  LayoutConfig cfg;

  int laid = 0, decent = 0;
  double worst_ms = 0;
  ModelStore store = parse_cime(generate_corpus_cime(so));
  auto names = store.substation_names();
  for (const std::string& name : names) {
    auto s0 = Clock::now();
    try {
      SubstationGraph g = build_graph(store.substation_records(name));
      LayoutDiagram d = layout_substation(g, name, cfg);
      ++laid;
      if (validate(d, cfg).passed) ++decent;
    } catch (const std::exception&) {
    }
    worst_ms = std::max(worst_ms, ms_since(s0));
  }
  double total_ms = ms_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "corpus %zu stations: %d laid out, %d decent (worst %.1f ms, total %.1f s)",
                names.size(), laid, decent, worst_ms, total_ms / 1000.0);
  bool ok = names.size() >= 200 && laid == static_cast<int>(names.size()) && decent == laid &&
            worst_ms < 1000.0 && total_ms < 60000.0;
  report(3, ok, buf);
}

// 4. Geometric invariants hold across at least 100 generated stations.
void criterion_properties() {
  SynthOptions so;
  so.seed = 99;
  so.count = 120;
  LayoutConfig cfg;
  ModelStore store = parse_cime(generate_corpus_cime(so));
  auto names = store.substation_names();

  long long checks = 0;
  int cases = 0;
  std::string miss;
  auto fail = [&](const std::string& what) {
    if (miss.empty()) miss = what;
  };

  for (const std::string& name : names) {
    SubstationGraph g = build_graph(store.substation_records(name));
    LayoutDiagram d = layout_substation(g, name, cfg);
    ++cases;

    for (const BusSegment& b : d.buses) {
      ++checks;
      if (b.x2 - b.x1 !=
          compute_bus_length(d.up_widths.at(b.bus), d.down_widths.at(b.bus), cfg))
        fail(name + ": bus length drifted from its equation");
    }

    auto regions = group_voltage_levels(g);
    std::map<std::string, std::set<double>> tr;
    for (const VoltageRegion& r : regions)
      for (const Branch& b : region_branches(g, r))
        for (const std::string& m : b.members)
          if (g.component(m).is_transformer()) tr[m].insert(r.level_kv);
    std::set<std::string> band;
    for (const auto& [t, kvs] : tr)
      if (kvs.size() >= 2) band.insert(t);

    for (const VoltageRegion& r : regions) {
      for (const Branch& br : region_branches(g, r)) {
        double lo = 0, hi = 0;
        bool init = false, measurable = true;
        for (const std::string& m : br.members) {
          if (band.count(m)) continue;
          const Placement* p = d.find(m);
          if (!p || p->orientation % 180 != 0) {
            measurable = false;
            break;
          }
          Extent e = cfg.extent(p->kind);
          lo = init ? std::min(lo, p->x - e.w / 2) : p->x - e.w / 2;
          hi = init ? std::max(hi, p->x + e.w / 2) : p->x + e.w / 2;
          init = true;
        }
        if (!measurable || !init) continue;
        ++checks;
        if (dry_run_branch_width(g, br, cfg) != hi - lo)
          fail(name + ": dry-run width disagrees with the placed extent");
      }
    }

    std::map<double, std::pair<double, double>> bus_y;  // kv -> min,max
    for (const BusSegment& b : d.buses) {
      auto [it, fresh] = bus_y.emplace(b.level_kv, std::make_pair(b.y, b.y));
      if (!fresh) {
        it->second.first = std::min(it->second.first, b.y);
        it->second.second = std::max(it->second.second, b.y);
      }
    }
    for (const std::string& t : band) {
      const Placement* p = d.find(t);
      ++checks;
      if (!p || p->y <= bus_y.at(*tr[t].rbegin()).second || p->y >= bus_y.at(*tr[t].begin()).first)
        fail(name + ": coupling transformer not strictly between its bus rows");
    }
    for (const Placement& p : d.placements) {
      if (p.kind != ComponentKind::GenUnit) continue;
      ++checks;
      if (p.y <= bus_y.at(p.region_kv).second) fail(name + ": generator above its bus row");
    }
  }

  // Determinism, twice over: a repeated run and a fanned-out batch.
  {
    auto render_all = [&] {
      std::string acc;
      for (const std::string& name : names) {
        SubstationGraph g = build_graph(store.substation_records(name));
        LayoutDiagram d = layout_substation(g, name, cfg);
        acc += emit_layout_json(d);
        acc += emit_svg(d, cfg);
      }
      return acc;
    };
    ++checks;
    if (render_all() != render_all()) fail("repeated rendering changed bytes");

    auto run_jobs = [&](int jobs, const char* tag) {
      fs::path dir = fs::temp_directory_path() / (std::string("sld_accept_") + tag);
      fs::remove_all(dir);
      fs::create_directories(dir);
      BatchOptions opt;
      opt.out_dir = dir.string();
      opt.jobs = jobs;
      generate_batch(store, names, opt);
      std::map<std::string, std::string> out;
      for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[e.path().filename().string()] = ss.str();
      }
      fs::remove_all(dir);
      return out;
    };
    ++checks;
    if (run_jobs(1, "j1") != run_jobs(8, "j8")) fail("job fan-out changed output bytes");
  }

  char buf[200];
  std::snprintf(buf, sizeof buf, "%lld invariant checks over %d stations%s%s", checks, cases,
                miss.empty() ? "" : " ", miss.c_str());
  report(4, cases >= 100 && miss.empty(), buf);
}

// 5. A station spanning five voltage levels is refused whole.
void criterion_too_many_levels() {
  fs::path dir = fs::temp_directory_path() / "sld_accept_refuse";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path model = dir / "golf.cime";
  {
    std::ofstream out(model);
    out << fixtures::kFiveLevelFixture;
  }
  fs::path outdir = dir / "out";
  fs::create_directories(outdir);

  std::string in_arg = model.string(), out_arg = outdir.string();
  const char* argv[] = {"sldkit", "generate", "-i", in_arg.c_str(), "-o", out_arg.c_str()};
  int rc = run_cli(6, argv);

  int files = 0;
  for (const auto& e : fs::directory_iterator(outdir)) {
    (void)e;
    ++files;
  }
  fs::remove_all(dir);

  char buf[160];
  std::snprintf(buf, sizeof buf, "five-level station refused (exit %d, %d files written)", rc,
                files);
  report(5, rc == 2 && files == 0, buf);
}

// 6. A three-level station stacks its regions and hangs each coupling
// transformer on one shared column.
void criterion_three_level_stack() {
  LayoutConfig cfg;
  LayoutDiagram d = lay_out(fixtures::kThreeLevelFixture, "FOXTROT", cfg);
  bool ok = validate(d, cfg).passed;

  ok = ok && d.regions.size() == 3 && d.regions[0].level_kv == 500 &&
       d.regions[1].level_kv == 220 && d.regions[2].level_kv == 35 &&
       d.regions[0].bbox.max_y < d.regions[1].bbox.min_y &&
       d.regions[1].bbox.max_y < d.regions[2].bbox.min_y;

  auto bus_y = [&](const char* id) {
    for (const BusSegment& b : d.buses)
      if (b.bus == id) return b.y;
    return 1e300;
  };
  const Placement* t2 = d.find("Transformer2W#62");
  const Placement* lv_sel = d.find("Disconnector#36");
  const Placement* lv_cb = d.find("Breaker#26");
  ok = ok && t2 && lv_sel && lv_cb;
  if (ok) {
    // The 35 kV coupling bay hangs below the 220 kV bus on the column of
    // its transformer.
    ok = lv_sel->x == t2->x && lv_cb->x == t2->x && t2->y > bus_y("Bus#12") &&
         lv_cb->y > t2->y && lv_sel->y > lv_cb->y && lv_sel->y < bus_y("Bus#13");
  }
  report(6, ok, "three-level station stacks 500/220/35 with aligned couplings");
}

}  // namespace

int main() {
  criterion_scheme_recognition();
  criterion_golden_node();
  criterion_corpus();
  criterion_properties();
  criterion_too_many_levels();
  criterion_three_level_stack();
  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
