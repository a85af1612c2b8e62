#include "sld/layout.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace sld {

const Placement* LayoutDiagram::find(const std::string& component_id) const {
  auto it = std::lower_bound(placements.begin(), placements.end(), component_id,
                             [](const Placement& p, const std::string& id) { return p.component < id; });
  if (it == placements.end() || it->component != component_id) return nullptr;
  return &*it;
}

double compute_bus_length(const std::vector<double>& up_widths,
                          const std::vector<double>& down_widths, const LayoutConfig& cfg) {
  auto side = [&](const std::vector<double>& ws) {
    double s = 0;
    for (double w : ws) s += w;
    return s + cfg.branch_gap * (static_cast<double>(ws.size()) + 1);
  };
  return std::max({side(up_widths), side(down_widths), cfg.min_bus_length});
}

std::vector<Rect> place_voltage_regions(const std::vector<VoltageRegion>& regions,
                                        const std::vector<Size>& sizes, const LayoutConfig& cfg) {
  if (regions.size() != sizes.size())
    throw std::runtime_error("place_voltage_regions: one size per region required");
  std::size_t n = regions.size();
  if (n == 0) return {};
  if (n > 4)
    throw LayoutError(LayoutErrorKind::TooManyLevels,
                      "cannot arrange " + std::to_string(n) + " voltage regions");

  double m = cfg.region_margin;
  std::vector<double> fw(n), fh(n);
  for (std::size_t i = 0; i < n; ++i) {
    fw[i] = sizes[i].w + 2 * m;
    fh[i] = sizes[i].h + 2 * m;
  }

  std::vector<Rect> out(n);
  auto frame = [](double x0, double y0, double w, double h) {
    return Rect{x0, y0, x0 + w, y0 + h};
  };
  if (n == 1) {
    out[0] = frame(-fw[0] / 2, -fh[0] / 2, fw[0], fh[0]);
  } else if (n == 2) {
    double h = fh[0] + fh[1];
    out[0] = frame(-fw[0] / 2, -h / 2, fw[0], fh[0]);
    out[1] = frame(-fw[1] / 2, -h / 2 + fh[0], fw[1], fh[1]);
  } else if (n == 3) {
    double w = std::max(fw[0], fw[1] + fw[2]);
    double h = fh[0] + std::max(fh[1], fh[2]);
    out[0] = frame(-w / 2, -h / 2, w, fh[0]);  // highest level spans the top
    double lx = -(fw[1] + fw[2]) / 2, ly = -h / 2 + fh[0];
    out[1] = frame(lx, ly, fw[1], fh[1]);  // higher of the two below goes left
    out[2] = frame(lx + fw[1], ly, fw[2], fh[2]);
  } else {
    double c0 = std::max(fw[0], fw[2]), c1 = std::max(fw[1], fw[3]);
    double r0 = std::max(fh[0], fh[1]), r1 = std::max(fh[2], fh[3]);
    double w = c0 + c1, h = r0 + r1;
    out[0] = frame(-w / 2, -h / 2, c0, r0);
    out[1] = frame(-w / 2 + c0, -h / 2, c1, r0);
    out[2] = frame(-w / 2, -h / 2 + r0, c0, r1);
    out[3] = frame(-w / 2 + c0, -h / 2 + r0, c1, r1);
  }
  return out;
}

namespace {

constexpr double kSymbolClearance = 8;  // keeps boxes > 1 unit apart at any extent

double pitch(const LayoutConfig& cfg, double ha, double hb) {
  return std::max(cfg.grid_unit, (ha + hb) / 2 + kSymbolClearance);
}

struct Oriented {
  double w, h;
};

Oriented oriented_extent(const LayoutConfig& cfg, ComponentKind k, int orientation) {
  Extent e = cfg.extent(k);
  if (orientation == 90 || orientation == 270) return {e.h, e.w};
  return {e.w, e.h};
}

double component_level(const Component& c, double region_kv) {
  if (c.voltage_kv.empty()) return region_kv;
  if (c.is_transformer()) return *std::max_element(c.voltage_kv.begin(), c.voltage_kv.end());
  return c.voltage_kv.front();
}

/// One not-yet-routed connector ending at a transformer placed between
/// regions. `prefix` ends at the x the connector descends/ascends along.
struct PendingTr {
  std::string t_id;
  std::string from_id;
  std::vector<Point> prefix;
  double level_kv = 0;
  double region_kv = 0;  // region of the branch the connector leaves
};

/// A transformer placed inline in a chain whose outer side may grow a tail
/// of components that reach no bus.
struct TailSlot {
  std::string t_id;
  double x = 0, port_y = 0;
  int dir = 1;
};

struct ChainResult {
  double width = 12;
  double base_w = 12;
  double extent = 0;  // greatest |y - chain_base| + h/2 of any placed member
};

struct RegionContent {
  std::vector<Placement> placements;
  std::vector<Polyline> polylines;
  std::vector<BusSegment> buses;
  std::vector<PendingTr> pendings;
  std::vector<TailSlot> tails;
  std::map<std::string, double> anchors_local;  // transformer id -> column x
  std::map<std::string, std::vector<double>> up_w, down_w;
  std::vector<std::string> warnings;
  Rect bbox{0, 0, 0, 0};
  bool anchored = false;
  double anchor_dx = 0;  // forced global x of local origin when anchored
};

struct ChainJob {
  const SubstationGraph* g;
  const LayoutConfig* cfg;
  const Branch* b;
  const std::set<std::string>* band_ts;
  const std::map<std::string, double>* bus_ys;       // per-bus y for tap connectors
  const std::map<std::string, std::pair<double, double>>* bus_xr;  // bus x-ranges
  RegionContent* out = nullptr;  // null for a dry run
  double spine_x = 0;
  double chain_base = 0;  // y the stack grows from
  double attach_y = 0;    // y of the owning bus (head connector target)
  int dir = -1;           // -1 grows upward, +1 downward
  double level = 0, region_kv = 0;
};

class ChainPlacer {
 public:
  explicit ChainPlacer(const ChainJob& j) : j_(j) {
    min_x_ = j.spine_x - 6;
    max_x_ = j.spine_x + 6;
  }

  ChainResult run() {
    walk(j_.b->head, j_.spine_x, j_.attach_y, j_.chain_base, 0, j_.b->owner_bus);
    ChainResult r;
    r.width = max_x_ - min_x_;
    r.base_w = base_w_;
    r.extent = extent_;
    return r;
  }

 private:
  void emit_line(const std::string& a, const std::string& b, std::vector<Point> pts) {
    if (!j_.out) return;
    Polyline pl;
    pl.a = a;
    pl.b = b;
    pl.points = std::move(pts);
    pl.level_kv = j_.level;
    j_.out->polylines.push_back(std::move(pl));
  }

  // prev_port_y: y the incoming connector leaves from; prev_cy/prev_h: center
  // and height the stacking pitch is measured against (a bus has height 0).
  void walk(const std::string& id, double x, double prev_port_y, double prev_cy, double prev_h,
            const std::string& prev_id) {
    const Component& c = j_.g->component(id);
    if (j_.band_ts->count(id)) {
      if (j_.out) {
        PendingTr p;
        p.t_id = id;
        p.from_id = prev_id;
        p.prefix = {{x, prev_port_y}};
        p.level_kv = j_.level;
        p.region_kv = j_.region_kv;
        j_.out->pendings.push_back(std::move(p));
        j_.out->anchors_local.emplace(id, x);
      }
      return;
    }
    Oriented e = oriented_extent(*j_.cfg, c.kind, 0);
    double y = prev_cy + j_.dir * pitch(*j_.cfg, prev_h, e.h);

    if (j_.out) {
      Placement pl;
      pl.component = id;
      pl.kind = c.kind;
      pl.x = x;
      pl.y = y;
      pl.orientation = 0;
      pl.level_kv = component_level(c, j_.region_kv);
      pl.region_kv = j_.region_kv;
      pl.status = c.status;
      j_.out->placements.push_back(pl);
    }
    emit_line(prev_id, id, {{x, prev_port_y}, {x, y - j_.dir * e.h / 2}});

    min_x_ = std::min(min_x_, x - e.w / 2);
    max_x_ = std::max(max_x_, x + e.w / 2);
    extent_ = std::max(extent_, std::abs(y - j_.chain_base) + e.h / 2);
    if (x == j_.spine_x) base_w_ = std::max(base_w_, e.w);

    if (!c.is_transformer()) {
      auto tap = j_.b->bus_taps.find(id);
      if (tap != j_.b->bus_taps.end()) route_tap(id, x, y, e, tap->second);
    } else if (j_.out) {
      // An inline transformer may carry components past its far winding.
      j_.out->tails.push_back({id, x, y + j_.dir * e.h / 2, j_.dir});
    }

    const auto& kids = j_.b->children.at(id);
    if (kids.empty()) return;
    std::string cont = continue_child(*j_.g, *j_.b, id);
    for (const std::string& k : kids) {
      if (k == cont) continue;
      double cx = j_.spine_x + (++col_) * j_.cfg->branch_gap;
      walk_right(k, id, x, y, e, cx);
    }
    if (!cont.empty()) walk(cont, x, y + j_.dir * e.h / 2, y, e.h, id);
  }

  void walk_right(const std::string& id, const std::string& parent, double px, double py,
                  Oriented pe, double cx) {
    const Component& c = j_.g->component(id);
    if (j_.band_ts->count(id)) {
      if (j_.out) {
        PendingTr p;
        p.t_id = id;
        p.from_id = parent;
        p.prefix = {{px + pe.w / 2, py}, {cx, py}};
        p.level_kv = j_.level;
        p.region_kv = j_.region_kv;
        j_.out->pendings.push_back(std::move(p));
        j_.out->anchors_local.emplace(id, cx);
      }
      return;
    }
    Oriented e = oriented_extent(*j_.cfg, c.kind, 0);
    double y = py + j_.dir * pitch(*j_.cfg, pe.h, e.h);
    if (j_.out) {
      Placement pl;
      pl.component = id;
      pl.kind = c.kind;
      pl.x = cx;
      pl.y = y;
      pl.orientation = 0;
      pl.level_kv = component_level(c, j_.region_kv);
      pl.region_kv = j_.region_kv;
      pl.status = c.status;
      j_.out->placements.push_back(pl);
    }
    emit_line(parent, id, {{px + pe.w / 2, py}, {cx, py}, {cx, y - j_.dir * e.h / 2}});
    min_x_ = std::min(min_x_, cx - e.w / 2);
    max_x_ = std::max(max_x_, cx + e.w / 2);
    extent_ = std::max(extent_, std::abs(y - j_.chain_base) + e.h / 2);

    if (!c.is_transformer()) {
      auto tap = j_.b->bus_taps.find(id);
      if (tap != j_.b->bus_taps.end()) route_tap(id, cx, y, e, tap->second);
    } else if (j_.out) {
      j_.out->tails.push_back({id, cx, y + j_.dir * e.h / 2, j_.dir});
    }

    const auto& kids = j_.b->children.at(id);
    if (kids.empty()) return;
    std::string cont = continue_child(*j_.g, *j_.b, id);
    for (const std::string& k : kids) {
      if (k == cont) continue;
      double nx = j_.spine_x + (++col_) * j_.cfg->branch_gap;
      walk_right(k, id, cx, y, e, nx);
    }
    if (!cont.empty()) walk(cont, cx, y + j_.dir * e.h / 2, y, e.h, id);
  }

  void route_tap(const std::string& id, double x, double y, Oriented e, const std::string& bus) {
    auto yit = j_.bus_ys->find(bus);
    if (yit == j_.bus_ys->end()) {
      if (j_.out)
        j_.out->warnings.push_back("tie from " + id + " to " + bus +
                                   " in another voltage region left unrouted");
      return;
    }
    double ty = yit->second;
    double py = (ty > y) ? y + e.h / 2 : y - e.h / 2;
    std::vector<Point> pts{{x, py}, {x, ty}};
    auto xr = j_.bus_xr->find(bus);
    if (xr != j_.bus_xr->end() && (x < xr->second.first || x > xr->second.second)) {
      double bx = (x < xr->second.first) ? xr->second.first : xr->second.second;
      pts.push_back({bx, ty});
    }
    emit_line(id, bus, std::move(pts));
  }

  ChainJob j_;
  int col_ = 0;
  double min_x_, max_x_;
  double base_w_ = 12;
  double extent_ = 0;
};

ChainResult run_chain(const ChainJob& j) { return ChainPlacer(j).run(); }

// ---------------------------------------------------------------------------
// Lane packing

struct SlotPlan {
  const Branch* br = nullptr;
  ChainResult dry;
  bool pinned = false;
  double pin_x = 0;        // global spine target when pinned
  double sort_anchor = 0;  // transformer x used to order down-side branches
  int pair_rank = 1;       // end-nearest adjustment for horizontally paired buses
  std::size_t count = 0;
  double slot_start = 0;  // filled by packing (local coords)
  bool placed = false;
};

/// First-fit packing of one lane over [0, L]: pinned slots sit at their exact
/// targets, unpinned ones flow around them. Returns false when the pins do
/// not fit, in which case the caller drops them and repacks.
bool pack_lane(std::vector<SlotPlan*>& slots, double L, const LayoutConfig& cfg, double local_shift) {
  double gap = cfg.branch_gap;
  std::vector<SlotPlan*> pins, flow;
  for (SlotPlan* s : slots)
    (s->pinned ? pins : flow).push_back(s);
  std::sort(pins.begin(), pins.end(),
            [](const SlotPlan* a, const SlotPlan* b) { return a->pin_x < b->pin_x; });

  double prev_end = 0;
  for (SlotPlan* p : pins) {
    double start = p->pin_x - local_shift - p->dry.base_w / 2;
    if (start < std::max(gap, prev_end + gap) - 1e-9) return false;
    if (start + p->dry.width > L - gap + 1e-9) return false;
    p->slot_start = start;
    p->placed = true;
    prev_end = start + p->dry.width;
  }

  double cursor = gap;
  std::size_t pi = 0;
  for (SlotPlan* s : flow) {
    for (;;) {
      while (pi < pins.size() && pins[pi]->slot_start + pins[pi]->dry.width + gap <= cursor + 1e-9)
        ++pi;
      if (pi < pins.size() && cursor + s->dry.width + gap > pins[pi]->slot_start + 1e-9) {
        cursor = pins[pi]->slot_start + pins[pi]->dry.width + gap;
        ++pi;
        continue;
      }
      break;
    }
    if (cursor + s->dry.width > L - gap + 1e-9) return false;
    s->slot_start = cursor;
    s->placed = true;
    cursor += s->dry.width + gap;
  }
  return true;
}

void sort_up_side(std::vector<SlotPlan*>& v) {
  std::sort(v.begin(), v.end(), [](const SlotPlan* a, const SlotPlan* b) {
    return std::tie(a->pair_rank, a->count, a->br->head) <
           std::tie(b->pair_rank, b->count, b->br->head);
  });
}

void sort_down_side(std::vector<SlotPlan*>& v) {
  std::sort(v.begin(), v.end(), [](const SlotPlan* a, const SlotPlan* b) {
    return std::tie(a->pair_rank, a->sort_anchor, a->count, a->br->head) <
           std::tie(b->pair_rank, b->sort_anchor, b->count, b->br->head);
  });
}

// ---------------------------------------------------------------------------
// Region assembly

enum class Lane { Up, Down, Str, Bridge };

struct RegionJob {
  const SubstationGraph* g;
  const LayoutConfig* cfg;
  const VoltageRegion* region;
  std::vector<Branch>* branches;
  const std::set<std::string>* band_ts;
  const std::map<std::string, std::set<double>>* t_regions;  // transformer -> attached kvs
  const std::map<std::string, double>* anchors;              // global transformer columns
  bool allow_pins = true;
};

Lane branch_lane(const RegionJob& j, const Branch& b) {
  bool internal_tie = b.other_bus && std::find(j.region->buses.begin(), j.region->buses.end(),
                                               *b.other_bus) != j.region->buses.end();
  if (internal_tie) {
    if (j.region->scheme == BusScheme::BreakerAndHalfOrDBDB) return Lane::Str;
    if (j.region->scheme == BusScheme::SingleBusWithSectionalizer) {
      bool pure_chain = true;
      for (const auto& [id, kids] : b.children)
        if (kids.size() > 1) pure_chain = false;
      if (pure_chain) return Lane::Bridge;
    }
  }
  return b.direction == BranchDirection::Up ? Lane::Up : Lane::Down;
}

/// Pin and ordering data derived from transformers inside the branch.
void annotate_transformers(const RegionJob& j, const Branch& b, SlotPlan& s) {
  s.sort_anchor = std::numeric_limits<double>::infinity();
  for (const std::string& m : b.members) {
    if (!j.band_ts->count(m)) continue;
    auto a = j.anchors->find(m);
    if (a == j.anchors->end()) continue;
    s.sort_anchor = std::min(s.sort_anchor, a->second);
    const std::set<double>& kvs = j.t_regions->at(m);
    if (j.allow_pins && !s.pinned && j.region->level_kv == *kvs.begin()) {
      s.pinned = true;  // this bus sits on the transformer's lowest attached level
      s.pin_x = a->second;
    }
  }
}

struct LaneSpec {
  std::vector<SlotPlan*> slots;
  double base_y = 0;    // y the chains grow from
  int dir = -1;
  double range_x0 = 0;  // bus-local packing origin (sectionalizer offsets)
};

void place_packed(const RegionJob& j, RegionContent& out, LaneSpec& lane,
                  const std::map<std::string, double>& bus_ys,
                  const std::map<std::string, std::pair<double, double>>& bus_xr) {
  for (SlotPlan* s : lane.slots) {
    ChainJob cj;
    cj.g = j.g;
    cj.cfg = j.cfg;
    cj.b = s->br;
    cj.band_ts = j.band_ts;
    cj.bus_ys = &bus_ys;
    cj.bus_xr = &bus_xr;
    cj.out = &out;
    cj.spine_x = lane.range_x0 + s->slot_start + s->dry.base_w / 2;
    cj.chain_base = lane.base_y;
    cj.attach_y = bus_ys.at(s->br->owner_bus);
    cj.dir = lane.dir;
    cj.level = j.region->level_kv;
    cj.region_kv = j.region->level_kv;
    run_chain(cj);
  }
}

ChainResult dry_chain(const RegionJob& j, const Branch& b) {
  static const std::map<std::string, double> no_ys;
  static const std::map<std::string, std::pair<double, double>> no_xr;
  ChainJob cj;
  cj.g = j.g;
  cj.cfg = j.cfg;
  cj.b = &b;
  cj.band_ts = j.band_ts;
  cj.bus_ys = &no_ys;
  cj.bus_xr = &no_xr;
  cj.out = nullptr;
  cj.spine_x = 0;
  cj.chain_base = 0;
  cj.attach_y = 0;
  cj.dir = -1;
  return run_chain(cj);
}

void record_widths(RegionContent& out, const std::vector<std::string>& buses,
                   const std::vector<SlotPlan*>& ups, const std::vector<SlotPlan*>& downs) {
  std::vector<SlotPlan*> u = ups, d = downs;
  auto by_pos = [](const SlotPlan* a, const SlotPlan* b) { return a->slot_start < b->slot_start; };
  std::sort(u.begin(), u.end(), by_pos);
  std::sort(d.begin(), d.end(), by_pos);
  std::vector<double> uw, dw;
  for (SlotPlan* s : u) uw.push_back(s->dry.width);
  for (SlotPlan* s : d) dw.push_back(s->dry.width);
  for (const std::string& bus : buses) {
    out.up_w[bus] = uw;
    out.down_w[bus] = dw;
  }
}

void add_bus(const RegionJob& j, RegionContent& out, const std::string& bus_id, double x0,
             double L, double y) {
  const Component& c = j.g->component(bus_id);
  BusSegment seg;
  seg.bus = bus_id;
  seg.x1 = x0;
  seg.x2 = x0 + L;
  seg.y = y;
  seg.level_kv = j.region->level_kv;
  seg.status = c.status;
  out.buses.push_back(seg);
}

void grow_bbox(Rect& r, double x0, double y0, double x1, double y1, bool& init) {
  if (!init) {
    r = {x0, y0, x1, y1};
    init = true;
    return;
  }
  r.min_x = std::min(r.min_x, x0);
  r.min_y = std::min(r.min_y, y0);
  r.max_x = std::max(r.max_x, x1);
  r.max_y = std::max(r.max_y, y1);
}

void finish_bbox(const RegionJob& j, RegionContent& out) {
  bool init = false;
  Rect r{0, 0, 0, 0};
  for (const Placement& p : out.placements) {
    Oriented e = oriented_extent(*j.cfg, p.kind, p.orientation);
    grow_bbox(r, p.x - e.w / 2, p.y - e.h / 2, p.x + e.w / 2, p.y + e.h / 2, init);
  }
  for (const BusSegment& b : out.buses) grow_bbox(r, b.x1, b.y, b.x2, b.y, init);
  out.bbox = r;
}

double round_up_grid(double v, double g) { return std::ceil(v / g - 1e-9) * g; }

/// Packs both lanes of a bus group that shares one horizontal extent
/// (single buses and vertical pairs). Retries without pins when they do not
/// fit the bus computed by the length equation.
struct PackedLanes {
  double L = 0;
  std::vector<SlotPlan*> ups, downs;
  bool pins_dropped = false;
  double local_shift = 0;  // pin_x - local coordinate offset (0 until anchored)
};

PackedLanes pack_shared(const RegionJob& j, const std::vector<SlotPlan*>& up_side,
                        const std::vector<SlotPlan*>& down_side, RegionContent& out) {
  PackedLanes res;
  res.ups = up_side;
  res.downs = down_side;
  sort_up_side(res.ups);
  sort_down_side(res.downs);

  std::vector<double> uw, dw;
  for (SlotPlan* s : res.ups) uw.push_back(s->dry.width);
  for (SlotPlan* s : res.downs) dw.push_back(s->dry.width);
  res.L = compute_bus_length(uw, dw, *j.cfg);

  // Anchor the region on the leftmost pinned slot so that pin lands exactly.
  const SlotPlan* first_pin = nullptr;
  for (SlotPlan* s : res.ups)
    if (s->pinned && (!first_pin || s->pin_x < first_pin->pin_x)) first_pin = s;
  for (SlotPlan* s : res.downs)
    if (s->pinned && (!first_pin || s->pin_x < first_pin->pin_x)) first_pin = s;
  if (first_pin) {
    res.local_shift = first_pin->pin_x - (j.cfg->branch_gap + first_pin->dry.base_w / 2);
    out.anchored = true;
    out.anchor_dx = res.local_shift;
  }

  bool ok = pack_lane(res.ups, res.L, *j.cfg, res.local_shift) &&
            pack_lane(res.downs, res.L, *j.cfg, res.local_shift);
  if (!ok) {
    for (SlotPlan* s : res.ups) s->pinned = false;
    for (SlotPlan* s : res.downs) s->pinned = false;
    res.pins_dropped = true;
    out.anchored = false;
    out.anchor_dx = 0;
    res.local_shift = 0;
    sort_up_side(res.ups);
    sort_down_side(res.downs);
    pack_lane(res.ups, res.L, *j.cfg, 0);
    pack_lane(res.downs, res.L, *j.cfg, 0);
    out.warnings.push_back("transformer-aligned slots did not fit the " +
                           std::to_string(static_cast<long long>(j.region->level_kv)) +
                           " kV bus; connectors are jogged instead");
  }
  return res;
}

RegionContent layout_region(const RegionJob& j) {
  RegionContent out;
  const VoltageRegion& rg = *j.region;

  std::vector<SlotPlan> plans(j.branches->size());
  std::vector<SlotPlan*> ups, downs, strings, bridges;
  for (std::size_t i = 0; i < j.branches->size(); ++i) {
    Branch& b = (*j.branches)[i];
    SlotPlan& s = plans[i];
    s.br = &b;
    s.count = b.members.size();
    s.dry = dry_chain(j, b);
    annotate_transformers(j, b, s);
    switch (branch_lane(j, b)) {
      case Lane::Up: ups.push_back(&s); break;
      case Lane::Down: downs.push_back(&s); break;
      case Lane::Str: strings.push_back(&s); break;
      case Lane::Bridge: bridges.push_back(&s); break;
    }
  }

  std::map<std::string, double> bus_ys;
  std::map<std::string, std::pair<double, double>> bus_xr;
  double g = j.cfg->grid_unit;

  bool vertical_pair =
      rg.buses.size() == 2 && (rg.scheme == BusScheme::DoubleBusSingleBreaker ||
                               rg.scheme == BusScheme::MainAndBypass ||
                               rg.scheme == BusScheme::BreakerAndHalfOrDBDB);

  if (rg.buses.size() == 1 || vertical_pair) {
    std::string top = rg.buses.front();
    std::string bot = rg.buses.size() == 2 ? rg.buses[1] : std::string();
    if (rg.scheme == BusScheme::MainAndBypass && rg.bypass_bus) {
      top = *rg.bypass_bus;
      bot = (rg.buses[0] == top) ? rg.buses[1] : rg.buses[0];
    }

    // Strings pack on the shared upper cursor: they claim horizontal room on
    // both buses at once.
    std::vector<SlotPlan*> upper = ups;
    upper.insert(upper.end(), strings.begin(), strings.end());
    for (SlotPlan* s : bridges) upper.push_back(s);  // no bridge without a pair gap
    PackedLanes pk = pack_shared(j, upper, downs, out);

    double dy = 0;
    if (!bot.empty()) {
      dy = 2 * g;
      if (rg.scheme == BusScheme::BreakerAndHalfOrDBDB) {
        double deepest = 0;
        for (SlotPlan* s : strings) deepest = std::max(deepest, s->dry.extent);
        dy = std::max(2 * g, round_up_grid(deepest + kSymbolClearance, g));
      }
    }
    bus_ys[top] = 0;
    if (!bot.empty()) bus_ys[bot] = dy;
    for (auto& [bus, y] : bus_ys) bus_xr[bus] = {0, pk.L};

    add_bus(j, out, top, 0, pk.L, 0);
    if (!bot.empty()) add_bus(j, out, bot, 0, pk.L, dy);

    LaneSpec up_lane;
    up_lane.dir = -1;
    up_lane.base_y = 0;
    for (SlotPlan* s : pk.ups)
      if (branch_lane(j, *s->br) != Lane::Str) up_lane.slots.push_back(s);
    place_packed(j, out, up_lane, bus_ys, bus_xr);

    for (SlotPlan* s : pk.ups) {
      if (branch_lane(j, *s->br) != Lane::Str) continue;
      double owner_y = bus_ys.at(s->br->owner_bus);
      LaneSpec str_lane;
      str_lane.dir = (owner_y == 0 && !bot.empty()) ? 1 : -1;
      str_lane.base_y = owner_y;
      str_lane.slots = {s};
      place_packed(j, out, str_lane, bus_ys, bus_xr);
    }

    LaneSpec down_lane;
    down_lane.dir = 1;
    down_lane.base_y = bot.empty() ? 0 : dy;
    down_lane.slots = pk.downs;
    place_packed(j, out, down_lane, bus_ys, bus_xr);

    std::vector<double> uw, dw;
    {
      std::vector<SlotPlan*> u = pk.ups, d = pk.downs;
      auto by_pos = [](const SlotPlan* a, const SlotPlan* b) {
        return a->slot_start < b->slot_start;
      };
      std::sort(u.begin(), u.end(), by_pos);
      std::sort(d.begin(), d.end(), by_pos);
      for (SlotPlan* s : u) uw.push_back(s->dry.width);
      for (SlotPlan* s : d) dw.push_back(s->dry.width);
    }
    for (const std::string& bus : rg.buses) {
      out.up_w[bus] = uw;
      out.down_w[bus] = dw;
    }
    if (rg.scheme == BusScheme::MainAndBypass)
      out.warnings.push_back("bypass bus " + top + " drawn above main bus " + bot +
                             "; review the pair order");
  } else if (rg.scheme == BusScheme::SingleBusWithSectionalizer && rg.buses.size() == 2) {
    const std::string& left = rg.buses[0];
    const std::string& right = rg.buses[1];
    auto mine = [&](SlotPlan* s, const std::string& bus) { return s->br->owner_bus == bus; };
    auto tied = [&](SlotPlan* s) { return s->br->other_bus.has_value(); };

    std::vector<SlotPlan*> lu, ld, ru, rd;
    for (SlotPlan* s : ups) (mine(s, left) ? lu : ru).push_back(s);
    for (SlotPlan* s : downs) (mine(s, left) ? ld : rd).push_back(s);
    // Branches that also touch the paired bus sit at the end nearest to it.
    for (SlotPlan* s : lu) s->pair_rank = tied(s) ? 2 : 1;
    for (SlotPlan* s : ld) s->pair_rank = tied(s) ? 2 : 1;
    for (SlotPlan* s : ru) s->pair_rank = tied(s) ? 0 : 1;
    for (SlotPlan* s : rd) s->pair_rank = tied(s) ? 0 : 1;

    PackedLanes lp = pack_shared(j, lu, ld, out);

    // The tie chain runs horizontally from the left bus end to the right bus.
    double cx = lp.L;
    double bridge_end = cx;
    const Branch* tie = bridges.empty() ? nullptr : bridges.front()->br;
    std::vector<std::pair<std::string, double>> tie_xs;
    if (tie) {
      double prev_w = 0;
      for (const std::string& m : tie->members) {
        Oriented e = oriented_extent(*j.cfg, j.g->component(m).kind, 90);
        cx += std::max(g, (prev_w + e.w) / 2 + kSymbolClearance);
        tie_xs.emplace_back(m, cx);
        prev_w = e.w;
      }
      bridge_end = cx + std::max(g, prev_w / 2 + kSymbolClearance);
    } else {
      bridge_end = lp.L + 2 * g;
    }

    // Right bus: pins keep global meaning, so its lane packs in its own frame.
    RegionContent rout;
    PackedLanes rp = pack_shared(j, ru, rd, rout);
    for (const std::string& w : rout.warnings) out.warnings.push_back(w);
    if (rout.anchored && !out.anchored) {
      // An anchored right half fixes the whole region: shift the left part.
      out.anchored = true;
      out.anchor_dx = rout.anchor_dx - bridge_end;
    }

    bus_ys[left] = 0;
    bus_ys[right] = 0;
    bus_xr[left] = {0, lp.L};
    bus_xr[right] = {bridge_end, bridge_end + rp.L};
    add_bus(j, out, left, 0, lp.L, 0);
    add_bus(j, out, right, bridge_end, rp.L, 0);

    LaneSpec s1{lu, 0, -1, 0}, s2{ld, 0, 1, 0};
    place_packed(j, out, s1, bus_ys, bus_xr);
    place_packed(j, out, s2, bus_ys, bus_xr);
    LaneSpec s3{ru, 0, -1, bridge_end}, s4{rd, 0, 1, bridge_end};
    place_packed(j, out, s3, bus_ys, bus_xr);
    place_packed(j, out, s4, bus_ys, bus_xr);

    if (tie) {
      std::string prev_id = left;
      double prev_x = lp.L, prev_w = 0;
      for (const auto& [m, mx] : tie_xs) {
        const Component& c = j.g->component(m);
        Oriented e = oriented_extent(*j.cfg, c.kind, 90);
        Placement pl;
        pl.component = m;
        pl.kind = c.kind;
        pl.x = mx;
        pl.y = 0;
        pl.orientation = 90;
        pl.level_kv = component_level(c, rg.level_kv);
        pl.region_kv = rg.level_kv;
        pl.status = c.status;
        out.placements.push_back(pl);
        Polyline seg;
        seg.a = prev_id;
        seg.b = m;
        seg.points = {{prev_x + prev_w / 2, 0}, {mx - e.w / 2, 0}};
        seg.level_kv = rg.level_kv;
        out.polylines.push_back(std::move(seg));
        prev_id = m;
        prev_x = mx;
        prev_w = e.w;
      }
      Polyline end;
      end.a = prev_id;
      end.b = right;
      end.points = {{prev_x + prev_w / 2, 0}, {bridge_end, 0}};
      end.level_kv = rg.level_kv;
      out.polylines.push_back(std::move(end));
    }

    record_widths(out, {left}, lu, ld);
    record_widths(out, {right}, ru, rd);
  } else {
    // Parallel single-bus rows: the fallback for unrecognized schemes and
    // regions with three or four buses. Bus heights come first so that ties
    // between the rows can route to their target bus.
    struct RowPlan {
      std::string bus;
      PackedLanes pk;
      double bus_y = 0;
    };
    std::vector<RowPlan> row_plans;
    double y_cursor = 0;
    bool first = true;
    for (const std::string& bus : rg.buses) {
      std::vector<SlotPlan*> bu, bd;
      for (SlotPlan* s : ups)
        if (s->br->owner_bus == bus) bu.push_back(s);
      for (SlotPlan* s : strings)
        if (s->br->owner_bus == bus) bu.push_back(s);
      for (SlotPlan* s : bridges)
        if (s->br->owner_bus == bus) bu.push_back(s);
      for (SlotPlan* s : downs)
        if (s->br->owner_bus == bus) bd.push_back(s);

      RegionContent row;
      RowPlan rp;
      rp.bus = bus;
      rp.pk = pack_shared(j, bu, bd, row);
      for (const std::string& w : row.warnings) out.warnings.push_back(w);
      if (row.anchored && first) {
        out.anchored = true;
        out.anchor_dx = row.anchor_dx;
      }

      double up_ext = 0, down_ext = 0;
      for (SlotPlan* s : rp.pk.ups) up_ext = std::max(up_ext, s->dry.extent);
      for (SlotPlan* s : rp.pk.downs) down_ext = std::max(down_ext, s->dry.extent);
      rp.bus_y = y_cursor + up_ext;
      bus_ys[bus] = rp.bus_y;
      bus_xr[bus] = {0, rp.pk.L};
      y_cursor = rp.bus_y + down_ext + 2 * g;
      first = false;
      row_plans.push_back(std::move(rp));
    }
    for (RowPlan& rp : row_plans) {
      add_bus(j, out, rp.bus, 0, rp.pk.L, rp.bus_y);
      LaneSpec up_lane{rp.pk.ups, rp.bus_y, -1, 0};
      LaneSpec down_lane{rp.pk.downs, rp.bus_y, 1, 0};
      place_packed(j, out, up_lane, bus_ys, bus_xr);
      place_packed(j, out, down_lane, bus_ys, bus_xr);
      record_widths(out, {rp.bus}, rp.pk.ups, rp.pk.downs);
    }
  }

  finish_bbox(j, out);
  return out;
}

}  // namespace

double dry_run_branch_width(const SubstationGraph& g, const Branch& b, const LayoutConfig& cfg) {
  // The band/chain split for transformers depends on which regions reach
  // them, so recover that context the same way the full pipeline does.
  std::vector<VoltageRegion> regions = group_voltage_levels(g);
  std::map<std::string, std::set<double>> t_regions;
  for (const VoltageRegion& r : regions) {
    for (const std::string& bus : r.buses)
      for (const Branch& br : find_branches(g, bus))
        for (const std::string& m : br.members)
          if (g.component(m).is_transformer()) t_regions[m].insert(r.level_kv);
  }
  std::set<std::string> band;
  for (const auto& [t, kvs] : t_regions)
    if (kvs.size() >= 2) band.insert(t);

  static const std::map<std::string, double> no_ys;
  static const std::map<std::string, std::pair<double, double>> no_xr;
  ChainJob cj;
  cj.g = &g;
  cj.cfg = &cfg;
  cj.b = &b;
  cj.band_ts = &band;
  cj.bus_ys = &no_ys;
  cj.bus_xr = &no_xr;
  cj.out = nullptr;
  cj.spine_x = 0;
  cj.chain_base = 0;
  cj.attach_y = 0;
  cj.dir = -1;
  return run_chain(cj).width;
}

namespace {

struct PlacedRegion {
  RegionContent content;
  double dx = 0, dy = 0;
};

void shift_content(RegionContent& c, double dx, double dy) {
  for (Placement& p : c.placements) {
    p.x += dx;
    p.y += dy;
  }
  for (BusSegment& b : c.buses) {
    b.x1 += dx;
    b.x2 += dx;
    b.y += dy;
  }
  for (Polyline& l : c.polylines)
    for (Point& pt : l.points) {
      pt.x += dx;
      pt.y += dy;
    }
  for (PendingTr& p : c.pendings)
    for (Point& pt : p.prefix) {
      pt.x += dx;
      pt.y += dy;
    }
  for (TailSlot& t : c.tails) {
    t.x += dx;
    t.port_y += dy;
  }
  for (auto& [id, x] : c.anchors_local) x += dx;
  c.bbox.min_x += dx;
  c.bbox.max_x += dx;
  c.bbox.min_y += dy;
  c.bbox.max_y += dy;
}

struct TrPorts {
  bool top = false, bottom = false, left = false, right = false;
};

}  // namespace

LayoutDiagram layout_substation(const SubstationGraph& g, const std::string& substation,
                                const LayoutConfig& cfg) {
  LayoutDiagram d;
  d.substation = substation;

  std::vector<VoltageRegion> regions = group_voltage_levels(g);
  std::vector<std::vector<Branch>> branches(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) {
    std::vector<std::string> diags;
    classify_scheme(g, regions[i], &diags);
    for (std::string& m : diags)
      d.warnings.push_back(std::to_string(static_cast<long long>(regions[i].level_kv)) +
                           " kV region: " + m);
    branches[i] = region_branches(g, regions[i]);
  }

  // A branch whose members reach a bus of another region is kept only by the
  // higher region; the duplicate view would otherwise place twice.
  {
    std::map<std::vector<std::string>, std::size_t> seen;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      auto& list = branches[i];
      for (auto it = list.begin(); it != list.end();) {
        std::vector<std::string> key = it->members;
        std::sort(key.begin(), key.end());
        if (!seen.emplace(std::move(key), i).second)
          it = list.erase(it);
        else
          ++it;
      }
    }
  }

  // Which regions reach each transformer. Transformers spanning two or more
  // regions are lifted out of their chains and placed between the frames.
  std::map<std::string, std::set<double>> t_regions;
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (const Branch& b : branches[i])
      for (const std::string& m : b.members)
        if (g.component(m).is_transformer()) t_regions[m].insert(regions[i].level_kv);
  std::set<std::string> band_ts;
  for (const auto& [t, kvs] : t_regions)
    if (kvs.size() >= 2) band_ts.insert(t);

  // Branch directions: generator rule, then transformer rule, then default.
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (Branch& b : branches[i]) {
      b.direction = BranchDirection::Up;
      bool has_gen = b.contains_kind(g, ComponentKind::GenUnit);
      if (has_gen) {
        b.direction = BranchDirection::Down;
        continue;
      }
      for (const std::string& m : b.members) {
        if (!band_ts.count(m)) continue;
        const std::set<double>& kvs = t_regions[m];
        b.direction = (regions[i].level_kv == *kvs.begin()) ? BranchDirection::Up
                                                            : BranchDirection::Down;
        break;
      }
    }
  }

  std::map<std::string, double> anchors;  // transformer id -> global column x
  std::vector<PlacedRegion> placed(regions.size());

  if (band_ts.empty()) {
    // Independent regions: the nominal canvas split applies unchanged.
    std::vector<Size> sizes;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      RegionJob rj{&g, &cfg, &regions[i], &branches[i], &band_ts, &t_regions, &anchors, false};
      placed[i].content = layout_region(rj);
      sizes.push_back({placed[i].content.bbox.width(), placed[i].content.bbox.height()});
    }
    std::vector<Rect> frames = place_voltage_regions(regions, sizes, cfg);
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const Rect& f = frames[i];
      const Rect& b = placed[i].content.bbox;
      double dx = (f.min_x + f.max_x) / 2 - (b.min_x + b.max_x) / 2;
      double dy = (f.min_y + f.max_y) / 2 - (b.min_y + b.max_y) / 2;
      shift_content(placed[i].content, dx, dy);
      regions[i].bbox = f;
    }
  } else {
    // Feed-chain rows: every transformer joining regions adds one level of
    // depth below the region feeding it.
    std::map<double, int> depth;
    for (const VoltageRegion& r : regions) depth[r.level_kv] = 0;
    for (const VoltageRegion& r : regions) {  // descending kv = topological order
      for (const auto& [t, kvs] : t_regions) {
        if (kvs.size() < 2 || *kvs.rbegin() != r.level_kv) continue;  // walk from the top
        std::vector<double> chain(kvs.rbegin(), kvs.rend());          // descending kv
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
          depth[chain[k + 1]] = std::max(depth[chain[k + 1]], depth[chain[k]] + 1);
      }
    }
    std::map<int, std::vector<std::size_t>> rows;  // depth -> region indices, desc kv
    for (std::size_t i = 0; i < regions.size(); ++i)
      rows[depth[regions[i].level_kv]].push_back(i);

    double row_top = 0;
    for (auto& [dep, idxs] : rows) {
      double cursor = std::numeric_limits<double>::lowest();
      double row_bottom = row_top;
      for (std::size_t i : idxs) {
        RegionJob rj{&g, &cfg, &regions[i], &branches[i], &band_ts, &t_regions, &anchors, true};
        RegionContent content = layout_region(rj);
        double dx;
        if (content.anchored && content.anchor_dx + content.bbox.min_x >= cursor) {
          dx = content.anchor_dx;
        } else {
          if (content.anchored) {
            RegionJob nj = rj;
            nj.allow_pins = false;
            content = layout_region(nj);
            content.warnings.push_back(
                "region frames collided; transformer alignment dropped for " +
                std::to_string(static_cast<long long>(regions[i].level_kv)) + " kV");
          }
          dx = (cursor == std::numeric_limits<double>::lowest() ? 0.0 : cursor) -
               content.bbox.min_x;
        }
        double dy = row_top - content.bbox.min_y;
        shift_content(content, dx, dy);
        for (const auto& [t, x] : content.anchors_local)
          if (t_regions[t].size() >= 2 && *t_regions[t].rbegin() == regions[i].level_kv)
            anchors.emplace(t, x);
        regions[i].bbox = content.bbox;
        cursor = content.bbox.max_x + 2 * cfg.region_margin;
        row_bottom = std::max(row_bottom, content.bbox.max_y);
        placed[i].content = std::move(content);
      }
      row_top = row_bottom + 2 * cfg.region_margin;
    }
  }

  // Collect the region content.
  std::vector<PendingTr> pendings;
  std::vector<TailSlot> tails;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    RegionContent& c = placed[i].content;
    for (Placement& p : c.placements) d.placements.push_back(std::move(p));
    for (Polyline& l : c.polylines) d.polylines.push_back(std::move(l));
    for (BusSegment& b : c.buses) d.buses.push_back(std::move(b));
    for (PendingTr& p : c.pendings) pendings.push_back(std::move(p));
    for (TailSlot& t : c.tails) tails.push_back(std::move(t));
    for (const std::string& w : c.warnings) d.warnings.push_back(w);
    for (auto& [bus, ws] : c.up_w) d.up_widths[bus] = std::move(ws);
    for (auto& [bus, ws] : c.down_w) d.down_widths[bus] = std::move(ws);
  }

  // Transformers between regions: centered half a margin above the frame of
  // their lowest attached region, on the column their top-side branch fixed.
  std::map<std::string, Point> t_pos;
  std::map<std::string, TrPorts> t_ports;
  std::vector<std::string> band_sorted(band_ts.begin(), band_ts.end());
  for (const std::string& t : band_sorted) {
    const std::set<double>& kvs = t_regions[t];
    double low_kv = *kvs.begin();
    const VoltageRegion* low = nullptr;
    for (const VoltageRegion& r : regions)
      if (r.level_kv == low_kv) low = &r;
    if (!low) continue;
    auto ax = anchors.find(t);
    double x = (ax != anchors.end()) ? ax->second
                                     : (low->bbox.min_x + low->bbox.max_x) / 2;
    double y = low->bbox.min_y - cfg.region_margin / 2;
    const Component& c = g.component(t);
    Placement pl;
    pl.component = t;
    pl.kind = c.kind;
    pl.x = x;
    pl.y = y;
    pl.orientation = 0;
    pl.level_kv = component_level(c, low_kv);
    pl.region_kv = low_kv;
    pl.status = c.status;
    d.placements.push_back(pl);
    t_pos[t] = {x, y};
  }

  // Route the connectors that were waiting for transformer positions.
  std::stable_sort(pendings.begin(), pendings.end(), [](const PendingTr& a, const PendingTr& b) {
    return std::tie(a.t_id, b.region_kv, a.from_id) < std::tie(b.t_id, a.region_kv, b.from_id);
  });
  for (PendingTr& p : pendings) {
    auto pos = t_pos.find(p.t_id);
    if (pos == t_pos.end()) continue;
    double tx = pos->second.x, ty = pos->second.y;
    Oriented te = oriented_extent(cfg, g.component(p.t_id).kind, 0);
    TrPorts& ports = t_ports[p.t_id];
    Point from = p.prefix.back();
    Polyline pl;
    pl.a = p.from_id;
    pl.b = p.t_id;
    pl.points = p.prefix;
    pl.level_kv = p.level_kv;
    bool above = from.y < ty;
    if (from.x == tx && above && !ports.top) {
      ports.top = true;
      pl.points.push_back({tx, ty - te.h / 2});
    } else if (from.x == tx && !above && !ports.bottom) {
      ports.bottom = true;
      pl.points.push_back({tx, ty + te.h / 2});
    } else {
      bool use_left = from.x <= tx;
      if (use_left && ports.left) use_left = false;
      if (!use_left && ports.right && !ports.left) use_left = true;
      (use_left ? ports.left : ports.right) = true;
      double px = use_left ? tx - te.w / 2 : tx + te.w / 2;
      if (from.x != px) pl.points.push_back({from.x, ty});
      pl.points.push_back({px, ty});
    }
    d.polylines.push_back(std::move(pl));
  }

  // Components beyond a transformer that reach no bus hang off its free side.
  std::set<std::string> placed_ids;
  for (const Placement& p : d.placements) placed_ids.insert(p.component);
  for (const std::string& t : band_sorted) {
    auto pos = t_pos.find(t);
    if (pos == t_pos.end()) continue;
    Oriented te = oriented_extent(cfg, g.component(t).kind, 0);
    TrPorts& ports = t_ports[t];
    double x = pos->second.x, y = pos->second.y;
    if (!ports.bottom)
      tails.push_back({t, x, y + te.h / 2, 1});
    else if (!ports.top)
      tails.push_back({t, x, y - te.h / 2, -1});
    else if (!ports.right)
      tails.push_back({t, x + te.w / 2, y, 1});
    else
      tails.push_back({t, x - te.w / 2, y, 1});
  }

  std::map<std::string, double> no_ys;
  std::map<std::string, std::pair<double, double>> no_xr;
  for (std::size_t ti = 0; ti < tails.size(); ++ti) {
    const TailSlot slot = tails[ti];
    const Component& tc = g.component(slot.t_id);
    std::vector<std::pair<std::string, long long>> heads;
    for (long long node : tc.nodes) {
      auto owners = g.node_owner.find(node);
      if (owners == g.node_owner.end()) continue;
      for (const std::string& id : owners->second) {
        const Component& c = g.component(id);
        if (id == slot.t_id || placed_ids.count(id)) continue;
        if (c.kind == ComponentKind::Bus || c.is_transformer()) continue;
        heads.push_back({id, node});
      }
    }
    if (heads.empty()) continue;
    // Build a chain rooted at the first loose component, walking nodes so
    // siblings on a shared node stay siblings. Loose components on another
    // winding attach as extra children of the root; a nested transformer
    // ends the chain and queues its own tail.
    Branch tb;
    tb.head = heads.front().first;
    tb.owner_bus = slot.t_id;
    std::set<std::string> visited{slot.t_id};
    auto at_bus = [&](long long n) {
      for (const std::string& id : g.node_owner.at(n))
        if (g.component(id).kind == ComponentKind::Bus) return true;
      return false;
    };
    std::function<void(const std::string&, long long)> dfs = [&](const std::string& id,
                                                                 long long entered) {
      visited.insert(id);
      tb.members.push_back(id);
      tb.children[id];
      const Component& c = g.component(id);
      if (c.is_transformer()) return;
      for (long long m : c.nodes) {
        if (m == entered || at_bus(m)) continue;
        for (const std::string& nb : g.node_owner.at(m)) {
          if (nb == id || visited.count(nb) || placed_ids.count(nb)) continue;
          tb.children[id].push_back(nb);
          dfs(nb, m);
        }
      }
    };
    dfs(tb.head, heads.front().second);
    for (const auto& [h, hn] : heads) {
      if (visited.count(h)) continue;
      tb.children[tb.head].push_back(h);
      dfs(h, hn);
    }

    const Placement* tp = nullptr;
    for (const Placement& p : d.placements)
      if (p.component == slot.t_id) tp = &p;
    RegionContent sink;
    ChainJob cj;
    cj.g = &g;
    cj.cfg = &cfg;
    cj.b = &tb;
    cj.band_ts = &band_ts;
    cj.bus_ys = &no_ys;
    cj.bus_xr = &no_xr;
    cj.out = &sink;
    cj.spine_x = slot.x;
    cj.chain_base = slot.port_y;
    cj.attach_y = slot.port_y;
    cj.dir = slot.dir;
    cj.level = tp ? tp->level_kv : component_level(tc, 0);
    cj.region_kv = tp ? tp->region_kv : 0;
    run_chain(cj);
    for (Placement& p : sink.placements) {
      double lv = component_level(g.component(p.component), p.level_kv);
      p.level_kv = lv;
      placed_ids.insert(p.component);
      d.placements.push_back(std::move(p));
    }
    for (Polyline& l : sink.polylines) d.polylines.push_back(std::move(l));
    for (TailSlot& extra : sink.tails) tails.push_back(extra);  // nested chain transformers
  }

  // Recenter on the union of the frames so the origin splits the canvas.
  {
    bool init = false;
    Rect u{0, 0, 0, 0};
    for (const VoltageRegion& r : regions)
      grow_bbox(u, r.bbox.min_x, r.bbox.min_y, r.bbox.max_x, r.bbox.max_y, init);
    for (const auto& [t, p] : t_pos) grow_bbox(u, p.x, p.y, p.x, p.y, init);
    if (init) {
      double dx = -(u.min_x + u.max_x) / 2;
      double dy = -(u.min_y + u.max_y) / 2;
      for (Placement& p : d.placements) {
        p.x += dx;
        p.y += dy;
      }
      for (BusSegment& b : d.buses) {
        b.x1 += dx;
        b.x2 += dx;
        b.y += dy;
      }
      for (Polyline& l : d.polylines)
        for (Point& pt : l.points) {
          pt.x += dx;
          pt.y += dy;
        }
      for (VoltageRegion& r : regions) {
        r.bbox.min_x += dx;
        r.bbox.max_x += dx;
        r.bbox.min_y += dy;
        r.bbox.max_y += dy;
      }
    }
  }

  d.regions = regions;
  std::sort(d.buses.begin(), d.buses.end(),
            [](const BusSegment& a, const BusSegment& b) { return a.bus < b.bus; });
  std::sort(d.placements.begin(), d.placements.end(),
            [](const Placement& a, const Placement& b) { return a.component < b.component; });
  std::sort(d.polylines.begin(), d.polylines.end(), [](const Polyline& a, const Polyline& b) {
    double ax = a.points.empty() ? 0 : a.points.front().x;
    double ay = a.points.empty() ? 0 : a.points.front().y;
    double bx = b.points.empty() ? 0 : b.points.front().x;
    double by = b.points.empty() ? 0 : b.points.front().y;
    return std::tie(a.a, a.b, ax, ay) < std::tie(b.a, b.b, bx, by);
  });
  return d;
}

}  // namespace sld
