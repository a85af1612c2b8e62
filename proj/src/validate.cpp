#include "sld/validate.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sld {

namespace {

constexpr double kEps = 1e-6;
constexpr double kMinClearance = 1.0;

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box placement_box(const Placement& p, const LayoutConfig& cfg) {
  Extent e = cfg.extent(p.kind);
  double w = e.w, h = e.h;
  if (p.orientation == 90 || p.orientation == 270) std::swap(w, h);
  return {p.x - w / 2, p.y - h / 2, p.x + w / 2, p.y + h / 2};
}

bool too_close(const Box& a, const Box& b) {
  double gap_x = std::max(b.min_x - a.max_x, a.min_x - b.max_x);
  double gap_y = std::max(b.min_y - a.max_y, a.min_y - b.max_y);
  return gap_x < kMinClearance && gap_y < kMinClearance;
}

struct Seg {
  double x1, y1, x2, y2;
  int object;  // index of the polyline or bus the segment belongs to
};

bool crosses(const Seg& a, const Seg& b) {
  bool ah = std::abs(a.y1 - a.y2) < kEps, av = std::abs(a.x1 - a.x2) < kEps;
  bool bh = std::abs(b.y1 - b.y2) < kEps, bv = std::abs(b.x1 - b.x2) < kEps;
  const Seg* h = nullptr;
  const Seg* v = nullptr;
  if (ah && !av && bv && !bh) {
    h = &a;
    v = &b;
  } else if (bh && !bv && av && !ah) {
    h = &b;
    v = &a;
  } else {
    return false;  // parallel or degenerate: no transversal crossing
  }
  double hx1 = std::min(h->x1, h->x2), hx2 = std::max(h->x1, h->x2);
  double vy1 = std::min(v->y1, v->y2), vy2 = std::max(v->y1, v->y2);
  return v->x1 > hx1 + kEps && v->x1 < hx2 - kEps && h->y1 > vy1 + kEps && h->y1 < vy2 - kEps;
}

bool on_ports(const Placement& p, const LayoutConfig& cfg, const Point& pt) {
  Extent e = cfg.extent(p.kind);
  double w = e.w, h = e.h;
  if (p.orientation == 90 || p.orientation == 270) std::swap(w, h);
  const double px[4] = {p.x, p.x, p.x - w / 2, p.x + w / 2};
  const double py[4] = {p.y - h / 2, p.y + h / 2, p.y, p.y};
  for (int i = 0; i < 4; ++i)
    if (std::abs(pt.x - px[i]) < kEps && std::abs(pt.y - py[i]) < kEps) return true;
  return false;
}

bool on_bus(const BusSegment& b, const Point& pt) {
  return std::abs(pt.y - b.y) < kEps && pt.x >= b.x1 - kEps && pt.x <= b.x2 + kEps;
}

}  // namespace

DecencyReport validate(const LayoutDiagram& d, const LayoutConfig& cfg, bool parallel) {
  DecencyReport r;
  const auto& ps = d.placements;
  std::size_t n = ps.size();

  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = placement_box(ps[i], cfg);

  // Pairwise clearance. The parallel path collects per-row hits and merges
  // them in row order, so both paths produce the same list.
  std::vector<std::vector<std::size_t>> hits(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long long li = 0; li < static_cast<long long>(n); ++li) {
    std::size_t i = static_cast<std::size_t>(li);
    for (std::size_t j = i + 1; j < n; ++j)
      if (too_close(boxes[i], boxes[j])) hits[i].push_back(j);
  }
  (void)parallel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : hits[i]) {
      const std::string& a = ps[i].component;
      const std::string& b = ps[j].component;
      r.overlaps.emplace_back(std::min(a, b), std::max(a, b));
    }

  // Every connector endpoint must land on its named component or bus.
  auto attached = [&](const std::string& id, const Point& pt) {
    for (const BusSegment& b : d.buses)
      if (b.bus == id) return on_bus(b, pt);
    const Placement* p = d.find(id);
    if (!p) return false;
    return on_ports(*p, cfg, pt);
  };
  for (const Polyline& l : d.polylines) {
    if (l.points.size() < 2) {
      r.dangling.push_back(l.a + "--" + l.b);
      continue;
    }
    if (!attached(l.a, l.points.front()) || !attached(l.b, l.points.back()))
      r.dangling.push_back(l.a + "--" + l.b);
  }

  // Containment: placement centers stay within their level's frame plus one
  // margin of slack (transformers between regions live in that slack).
  for (const Placement& p : ps) {
    const VoltageRegion* rg = nullptr;
    for (const VoltageRegion& q : d.regions)
      if (q.level_kv == p.region_kv) rg = &q;
    bool ok = false;
    if (rg) {
      double m = cfg.region_margin;
      ok = p.x >= rg->bbox.min_x - m - kEps && p.x <= rg->bbox.max_x + m + kEps &&
           p.y >= rg->bbox.min_y - m - kEps && p.y <= rg->bbox.max_y + m + kEps;
    }
    if (!ok) r.out_of_region.push_back(p.component);
  }

  // Transversal crossings between connector and bus segments.
  std::vector<Seg> segs;
  int object = 0;
  for (const Polyline& l : d.polylines) {
    for (std::size_t i = 0; i + 1 < l.points.size(); ++i)
      segs.push_back({l.points[i].x, l.points[i].y, l.points[i + 1].x, l.points[i + 1].y, object});
    ++object;
  }
  for (const BusSegment& b : d.buses) {
    segs.push_back({b.x1, b.y, b.x2, b.y, object});
    ++object;
  }
  long long crossings = 0;
  long long m = static_cast<long long>(segs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : crossings) if (parallel)
#endif
  for (long long i = 0; i < m; ++i)
    for (long long j = i + 1; j < m; ++j) {
      if (segs[i].object == segs[j].object) continue;
      if (crosses(segs[i], segs[j])) ++crossings;
    }
  r.crossing_count = crossings;

  r.passed = r.overlaps.empty() && r.dangling.empty() && r.out_of_region.empty();
  return r;
}

CorpusReport corpus_report(const std::vector<std::pair<std::string, DecencyReport>>& reports) {
  CorpusReport c;
  c.total = static_cast<long long>(reports.size());
  for (const auto& [name, r] : reports) {
    if (r.passed) ++c.passed;
    c.defect_histogram["overlap"] += static_cast<long long>(r.overlaps.size());
    c.defect_histogram["dangling"] += static_cast<long long>(r.dangling.size());
    c.defect_histogram["out_of_region"] += static_cast<long long>(r.out_of_region.size());
  }
  if (c.total > 0) c.pass_rate = static_cast<double>(c.passed) / static_cast<double>(c.total);
  return c;
}

}  // namespace sld
