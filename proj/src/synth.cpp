#include "sld/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace sld {

namespace {

// splitmix64: small, portable, and stable across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool chance(int pct) { return below(100) < pct; }
};

std::string fmt_kv(double kv) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", kv);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find(' ') == std::string::npos) return s;
  return "'" + s + "'";
}

constexpr int kKinds = 10;
const char* kBlockNames[kKinds] = {"Substation", "Bus",           "Breaker",    "Disconnector",
                                   "ACLine",     "Load",          "Transformer2W",
                                   "Transformer3W", "Compensator", "GenUnit"};
const char* kHeaders[kKinds] = {
    "id name",
    "id name volt node st",
    "id name volt node_i node_j point st",
    "id name volt node_i node_j point st",
    "id name volt node_i node_j st",
    "id name volt node st",
    "id name volt_i volt_j node_i node_j st",
    "id name volt_i volt_j volt_k node_i node_j node_k st",
    "id name volt node st",
    "id name volt node st",
};
enum Blk { BSub = 0, BBus, BBrk, BDis, BLin, BLod, BT2, BT3, BCmp, BGen };

struct Writer {
  std::vector<std::string> rows[kKinds];
  long long next_id[kKinds] = {1, 101, 1001, 2001, 3001, 4001, 5001, 5501, 6001, 7001};
  long long next_node = 10001;
  Rng* rng = nullptr;
  std::string st;

  long long node() { return next_node++; }

  std::string make_name(const char* prefix, long long id) {
    std::string base = prefix + std::to_string(id);
    if (rng->chance(20)) return prefix + (" " + std::to_string(id));
    return base;
  }

  long long bus(double kv, long long nd) {
    long long id = next_id[BBus]++;
    rows[BBus].push_back("# " + std::to_string(id) + " " + quoted(make_name("BUS", id)) + " " +
                         fmt_kv(kv) + " " + std::to_string(nd) + " " + quoted(st));
    return id;
  }
  void sw(Blk which, double kv, long long ni, long long nj, bool closed) {
    long long id = next_id[which]++;
    const char* prefix = which == BBrk ? "CB" : "DIS";
    rows[which].push_back("# " + std::to_string(id) + " " + quoted(make_name(prefix, id)) + " " +
                          fmt_kv(kv) + " " + std::to_string(ni) + " " + std::to_string(nj) + " " +
                          (closed ? "1" : "0") + " " + quoted(st));
  }
  void line(double kv, long long ni) {
    long long id = next_id[BLin]++;
    rows[BLin].push_back("# " + std::to_string(id) + " " + quoted(make_name("LN", id)) + " " +
                         fmt_kv(kv) + " " + std::to_string(ni) + " NULL " + quoted(st));
  }
  void leaf(Blk which, double kv, long long nd) {
    long long id = next_id[which]++;
    const char* prefix = which == BLod ? "LD" : (which == BCmp ? "CP" : "GN");
    rows[which].push_back("# " + std::to_string(id) + " " + quoted(make_name(prefix, id)) + " " +
                          fmt_kv(kv) + " " + std::to_string(nd) + " " + quoted(st));
  }
  void t2w(double kv_i, double kv_j, long long ni, long long nj) {
    long long id = next_id[BT2]++;
    rows[BT2].push_back("# " + std::to_string(id) + " " + quoted(make_name("TR", id)) + " " +
                        fmt_kv(kv_i) + " " + fmt_kv(kv_j) + " " + std::to_string(ni) + " " +
                        std::to_string(nj) + " " + quoted(st));
  }
  void t3w(double kv_i, double kv_j, double kv_k, long long ni, long long nj, long long nk) {
    long long id = next_id[BT3]++;
    rows[BT3].push_back("# " + std::to_string(id) + " " + quoted(make_name("TR", id)) + " " +
                        fmt_kv(kv_i) + " " + fmt_kv(kv_j) + " " + fmt_kv(kv_k) + " " +
                        std::to_string(ni) + " " + std::to_string(nj) + " " +
                        std::to_string(nk) + " " + quoted(st));
  }
};

enum class Scheme { Single, Double, Sectioned, Bypass, BreakerAndHalf };

struct Level {
  double kv = 0;
  Scheme scheme = Scheme::Single;
  std::vector<long long> bus_nodes;
};

bool mostly_closed(Rng& rng) { return !rng.chance(5); }

void feeder_terminal(Writer& w, Rng& rng, double kv, long long nd) {
  int pick = rng.below(10);
  if (pick < 6)
    w.line(kv, nd);
  else if (pick < 9)
    w.leaf(BLod, kv, nd);
  else
    w.leaf(BCmp, kv, nd);
}

// Plain bay: bus -D-(B)- terminal. Used on single buses and as the private
// feeders of sectionalized, bypass and breaker-and-a-half buses.
void simple_feeder(Writer& w, Rng& rng, double kv, long long bus_nd) {
  long long j = w.node();
  w.sw(BDis, kv, bus_nd, j, mostly_closed(rng));
  if (rng.chance(75)) {
    long long k = w.node();
    w.sw(BBrk, kv, j, k, mostly_closed(rng));
    feeder_terminal(w, rng, kv, k);
  } else {
    feeder_terminal(w, rng, kv, j);
  }
}

// Bay of a double-bus level: one disconnector per bus onto a shared point,
// then a breaker toward the feeder.
long long double_bay(Writer& w, Rng& rng, double kv, long long nd_a, long long nd_b) {
  long long j = w.node();
  w.sw(BDis, kv, nd_a, j, mostly_closed(rng));
  w.sw(BDis, kv, nd_b, j, !mostly_closed(rng));  // normally one side carries
  long long k = w.node();
  w.sw(BBrk, kv, j, k, mostly_closed(rng));
  return k;
}

// Bypass bay: main -D-B-D- feeder point, plus a disconnector over to the
// bypass bus. Returns the feeder point.
long long bypass_bay(Writer& w, Rng& rng, double kv, long long nd_main, long long nd_byp) {
  long long j1 = w.node(), j2 = w.node(), f = w.node();
  w.sw(BDis, kv, nd_main, j1, mostly_closed(rng));
  w.sw(BBrk, kv, j1, j2, mostly_closed(rng));
  w.sw(BDis, kv, j2, f, mostly_closed(rng));
  w.sw(BDis, kv, f, nd_byp, false);  // bypass path normally open
  return f;
}

// One breaker-and-a-half string between the two buses, with a line tapped at
// the midpoint.
void string_bay(Writer& w, Rng& rng, double kv, long long nd_a, long long nd_b) {
  long long n1 = w.node(), n2 = w.node(), mid = w.node(), n3 = w.node(), n4 = w.node();
  w.sw(BDis, kv, nd_a, n1, mostly_closed(rng));
  w.sw(BBrk, kv, n1, n2, mostly_closed(rng));
  w.sw(BDis, kv, n2, mid, mostly_closed(rng));
  w.sw(BDis, kv, mid, n3, mostly_closed(rng));
  w.sw(BBrk, kv, n3, n4, mostly_closed(rng));
  w.sw(BDis, kv, n4, nd_b, mostly_closed(rng));
  w.line(kv, mid);
}

// A bay ending at a free node where a transformer terminal can attach.
long long coupling_bay(Writer& w, Rng& rng, const Level& lvl) {
  if (lvl.scheme == Scheme::Double && lvl.bus_nodes.size() == 2)
    return double_bay(w, rng, lvl.kv, lvl.bus_nodes[0], lvl.bus_nodes[1]);
  long long j = w.node(), k = w.node();
  w.sw(BDis, lvl.kv, lvl.bus_nodes[0], j, mostly_closed(rng));
  w.sw(BBrk, lvl.kv, j, k, mostly_closed(rng));
  return k;
}

Level build_level(Writer& w, Rng& rng, double kv) {
  Level lvl;
  lvl.kv = kv;
  int pick = rng.below(100);
  if (pick < 35)
    lvl.scheme = Scheme::Single;
  else if (pick < 60)
    lvl.scheme = Scheme::Double;
  else if (pick < 75)
    lvl.scheme = Scheme::Sectioned;
  else if (pick < 90)
    lvl.scheme = Scheme::Bypass;
  else
    lvl.scheme = Scheme::BreakerAndHalf;

  int feeders = rng.chance(10) ? 9 + rng.below(12) : 2 + rng.below(7);

  switch (lvl.scheme) {
    case Scheme::Single: {
      long long nd = w.node();
      w.bus(kv, nd);
      lvl.bus_nodes = {nd};
      for (int i = 0; i < feeders; ++i) simple_feeder(w, rng, kv, nd);
      break;
    }
    case Scheme::Double: {
      long long na = w.node(), nb = w.node();
      w.bus(kv, na);
      w.bus(kv, nb);
      lvl.bus_nodes = {na, nb};
      for (int i = 0; i < std::max(feeders, 2); ++i) {
        long long k = double_bay(w, rng, kv, na, nb);
        feeder_terminal(w, rng, kv, k);
      }
      break;
    }
    case Scheme::Sectioned: {
      long long na = w.node(), nb = w.node();
      w.bus(kv, na);
      w.bus(kv, nb);
      lvl.bus_nodes = {na, nb};
      long long j1 = w.node(), j2 = w.node();
      w.sw(BDis, kv, na, j1, mostly_closed(rng));
      w.sw(BBrk, kv, j1, j2, mostly_closed(rng));
      w.sw(BDis, kv, j2, nb, mostly_closed(rng));
      int left = std::max(1, feeders / 2);
      int right = std::max(1, feeders - left);
      for (int i = 0; i < left; ++i) simple_feeder(w, rng, kv, na);
      for (int i = 0; i < right; ++i) simple_feeder(w, rng, kv, nb);
      break;
    }
    case Scheme::Bypass: {
      long long nm = w.node(), np = w.node();
      w.bus(kv, nm);
      w.bus(kv, np);
      lvl.bus_nodes = {nm, np};
      int byp = std::max(2, feeders / 2);
      for (int i = 0; i < byp; ++i) {
        long long f = bypass_bay(w, rng, kv, nm, np);
        feeder_terminal(w, rng, kv, f);
      }
      for (int i = byp; i < feeders; ++i) simple_feeder(w, rng, kv, nm);
      break;
    }
    case Scheme::BreakerAndHalf: {
      long long na = w.node(), nb = w.node();
      w.bus(kv, na);
      w.bus(kv, nb);
      lvl.bus_nodes = {na, nb};
      int strings = std::max(1, feeders / 3);
      for (int i = 0; i < strings; ++i) string_bay(w, rng, kv, na, nb);
      for (int i = 0; i < std::max(1, feeders - strings); ++i)
        simple_feeder(w, rng, kv, na);
      break;
    }
  }

  // Occasional generator bay; kept off tie strings so machines always hang
  // below their own bus.
  if (rng.chance(20) &&
      (lvl.scheme == Scheme::Single || lvl.scheme == Scheme::Sectioned)) {
    long long j = w.node(), k = w.node();
    w.sw(BDis, kv, lvl.bus_nodes[0], j, mostly_closed(rng));
    w.sw(BBrk, kv, j, k, mostly_closed(rng));
    w.leaf(BGen, kv, k);
  }
  return lvl;
}

}  // namespace

std::string generate_corpus_cime(const SynthOptions& opt) {
  Writer w;
  Rng rng(opt.seed);
  w.rng = &rng;

  const double kLadder[6] = {500, 330, 220, 110, 35, 10};

  for (int s = 0; s < opt.count; ++s) {
    long long sub_id = w.next_id[BSub]++;
    std::string name = "S" + std::to_string(100 + s);
    if (rng.chance(10)) name = "Plant " + std::to_string(100 + s);
    w.st = name;
    w.rows[BSub].push_back("# " + std::to_string(sub_id) + " " + quoted(name));

    int nlevels = 1;
    int pick = rng.below(100);
    if (pick < 30)
      nlevels = 1;
    else if (pick < 70)
      nlevels = 2;
    else if (pick < 95)
      nlevels = 3;
    else
      nlevels = 4;
    int start = rng.below(6 - nlevels + 1);

    std::vector<Level> levels;
    for (int l = 0; l < nlevels; ++l)
      levels.push_back(build_level(w, rng, kLadder[start + l]));

    for (int p = 0; p + 1 < nlevels; ++p) {
      bool three = p + 2 < nlevels && rng.chance(15);
      if (three) {
        long long hi = coupling_bay(w, rng, levels[p]);
        long long mid = coupling_bay(w, rng, levels[p + 1]);
        bool bare = rng.chance(30);  // tertiary winding left unconnected
        if (bare) {
          w.t3w(levels[p].kv, levels[p + 1].kv, levels[p + 2].kv, hi, mid, w.node());
        } else {
          long long lo = coupling_bay(w, rng, levels[p + 2]);
          w.t3w(levels[p].kv, levels[p + 1].kv, levels[p + 2].kv, hi, mid, lo);
          ++p;  // the tertiary already reaches the level below
        }
        continue;
      }
      int count = rng.chance(30) ? 2 : 1;
      for (int t = 0; t < count; ++t) {
        long long hi = coupling_bay(w, rng, levels[p]);
        long long lo = coupling_bay(w, rng, levels[p + 1]);
        w.t2w(levels[p].kv, levels[p + 1].kv, hi, lo);
      }
    }
  }

  std::string out;
  out.reserve(1 << 20);
  for (int k = 0; k < kKinds; ++k) {
    if (w.rows[k].empty()) continue;
    out += "<";
    out += kBlockNames[k];
    out += ">\n@ ";
    out += kHeaders[k];
    out += "\n";
    for (const std::string& row : w.rows[k]) {
      out += row;
      out += "\n";
    }
    out += "</";
    out += kBlockNames[k];
    out += ">\n";
  }
  return out;
}

}  // namespace sld
