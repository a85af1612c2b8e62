#include "sld/topology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sld {

std::string_view to_string(BusScheme s) {
  switch (s) {
    case BusScheme::SingleBus: return "SingleBus";
    case BusScheme::DoubleBusSingleBreaker: return "DoubleBusSingleBreaker";
    case BusScheme::SingleBusWithSectionalizer: return "SingleBusWithSectionalizer";
    case BusScheme::MainAndBypass: return "MainAndBypass";
    case BusScheme::BreakerAndHalfOrDBDB: return "BreakerAndHalfOrDBDB";
    case BusScheme::UnrecognizedScheme: return "UnrecognizedScheme";
  }
  return "BusScheme";
}

std::vector<VoltageRegion> group_voltage_levels(const SubstationGraph& g) {
  std::map<double, std::vector<std::string>, std::greater<double>> levels;
  for (const auto& [id, c] : g.attributes)
    if (c.kind == ComponentKind::Bus && !c.voltage_kv.empty())
      levels[c.voltage_kv.front()].push_back(id);

  if (levels.empty())
    throw LayoutError(LayoutErrorKind::NoBuses, "substation has no bus records");
  if (levels.size() > 4)
    throw LayoutError(LayoutErrorKind::TooManyLevels,
                      "substation spans " + std::to_string(levels.size()) +
                          " bus voltage levels; at most 4 are supported");

  std::vector<VoltageRegion> out;
  for (auto& [kv, buses] : levels) {
    VoltageRegion r;
    r.level_kv = kv;
    std::sort(buses.begin(), buses.end());
    r.buses = buses;
    out.push_back(std::move(r));
  }
  return out;
}

bool Branch::contains_kind(const SubstationGraph& g, ComponentKind k) const {
  for (const std::string& m : members)
    if (g.component(m).kind == k) return true;
  return false;
}

std::vector<Branch> find_branches(const SubstationGraph& g, const std::string& bus_id) {
  const Component& bus = g.component(bus_id);
  if (bus.kind != ComponentKind::Bus)
    throw GraphError(GraphErrorKind::UnknownComponent, bus_id + " is not a bus");

  std::vector<Branch> out;
  std::set<std::string> visited;  // across heads: each component lands in one branch per bus

  auto bus_on = [&](long long n) -> const std::string* {
    for (const std::string& id : g.node_owner.at(n))
      if (g.component(id).kind == ComponentKind::Bus) return &id;
    return nullptr;
  };

  for (const std::string& head : neighbors(g, bus_id)) {
    if (g.component(head).kind == ComponentKind::Bus) continue;
    if (visited.count(head)) continue;

    Branch b;
    b.head = head;
    b.owner_bus = bus_id;

    // DFS over connectivity nodes, children kept in id order. A component is
    // entered through one node and left through its others, so siblings on a
    // shared node never swallow each other. Busbar nodes bound the traversal
    // on every side; transformers join the branch but end it.
    std::function<void(const std::string&, long long)> dfs = [&](const std::string& id,
                                                                 long long entered) {
      visited.insert(id);
      b.members.push_back(id);
      b.children[id];
      const Component& c = g.component(id);
      if (c.is_transformer()) return;
      for (long long m : c.nodes) {
        if (m == entered) continue;
        if (const std::string* tap = bus_on(m)) {
          if (*tap != bus_id) {
            if (!b.other_bus) b.other_bus = *tap;
            b.bus_taps[id] = *tap;
          }
          continue;
        }
        for (const std::string& nb : g.node_owner.at(m)) {
          if (nb == id || visited.count(nb)) continue;
          b.children[id].push_back(nb);
          dfs(nb, m);
        }
      }
    };
    dfs(head, bus.nodes.front());
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

std::size_t subtree_size(const Branch& b, const std::string& root) {
  std::size_t n = 1;
  for (const std::string& c : b.children.at(root)) n += subtree_size(b, c);
  return n;
}

bool subtree_has_tap(const Branch& b, const std::string& root) {
  if (b.bus_taps.count(root)) return true;
  for (const std::string& c : b.children.at(root))
    if (subtree_has_tap(b, c)) return true;
  return false;
}

}  // namespace

std::string continue_child(const SubstationGraph&, const Branch& b, const std::string& junction) {
  const auto& kids = b.children.at(junction);
  if (kids.empty()) return {};
  if (b.other_bus) {
    for (const std::string& c : kids)
      if (subtree_has_tap(b, c)) return c;
  }
  std::string best;
  std::size_t best_n = 0;
  for (const std::string& c : kids) {
    std::size_t n = subtree_size(b, c);
    if (n > best_n || (n == best_n && (best.empty() || c < best))) {
      best = c;
      best_n = n;
    }
  }
  return best;
}

std::vector<SubBranch> sub_branches(const SubstationGraph& g, const Branch& b) {
  std::vector<SubBranch> out;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    const auto& kids = b.children.at(id);
    if (kids.size() < 2) {
      for (const std::string& c : kids) walk(c);
      return;
    }
    std::string cont = continue_child(g, b, id);
    for (const std::string& c : kids) {
      SubBranch sb;
      sb.parent = id;
      sb.slot = (c == cont) ? SubBranchSlot::Continue : SubBranchSlot::Right;
      std::function<void(const std::string&)> collect = [&](const std::string& m) {
        sb.members.push_back(m);
        for (const std::string& k : b.children.at(m)) collect(k);
      };
      collect(c);
      out.push_back(std::move(sb));
      walk(c);
    }
  };
  walk(b.head);
  return out;
}

std::string assign_branch_owner(const Branch& b) {
  if (b.other_bus && *b.other_bus < b.owner_bus) return *b.other_bus;
  return b.owner_bus;
}

std::vector<std::vector<ComponentKind>> inter_bus_paths(const SubstationGraph& g,
                                                        const std::string& bus_a,
                                                        const std::string& bus_b) {
  constexpr std::size_t kMaxPathLen = 12;
  constexpr std::size_t kMaxPaths = 64;

  std::vector<std::vector<ComponentKind>> out;
  std::vector<std::string> path;
  std::set<std::string> on_path;
  std::set<long long> on_path_nodes;

  const long long goal = g.component(bus_b).nodes.front();

  auto is_bus_node = [&](long long n) {
    for (const std::string& id : g.node_owner.at(n))
      if (g.component(id).kind == ComponentKind::Bus) return true;
    return false;
  };

  // Walks connectivity nodes. A component is traversed from one of its nodes
  // to a different one, so leaves can never sit inside a tie, and every path
  // ends the moment it reaches a busbar node.
  std::function<void(long long)> walk = [&](long long n) {
    if (out.size() >= kMaxPaths) return;
    for (const std::string& cid : g.node_owner.at(n)) {
      const Component& c = g.component(cid);
      if (c.kind == ComponentKind::Bus || c.is_transformer()) continue;
      if (on_path.count(cid) || path.size() >= kMaxPathLen) continue;
      for (long long m : c.nodes) {
        if (m == n) continue;
        path.push_back(cid);
        on_path.insert(cid);
        if (m == goal) {
          std::vector<ComponentKind> kinds;
          kinds.reserve(path.size());
          for (const std::string& mid : path) kinds.push_back(g.component(mid).kind);
          out.push_back(std::move(kinds));
        } else if (!is_bus_node(m) && !on_path_nodes.count(m)) {
          on_path_nodes.insert(m);
          walk(m);
          on_path_nodes.erase(m);
        }
        on_path.erase(cid);
        path.pop_back();
      }
    }
  };
  walk(g.component(bus_a).nodes.front());
  return out;
}

namespace {

bool is_dd(const std::vector<ComponentKind>& p) {
  return p.size() == 2 && p[0] == ComponentKind::Disconnector && p[1] == ComponentKind::Disconnector;
}

bool is_dbd(const std::vector<ComponentKind>& p) {
  return p.size() == 3 && p[0] == ComponentKind::Disconnector && p[1] == ComponentKind::Breaker &&
         p[2] == ComponentKind::Disconnector;
}

bool is_dbdd(const std::vector<ComponentKind>& p) {
  return p.size() == 4 && p[0] == ComponentKind::Disconnector && p[1] == ComponentKind::Breaker &&
         p[2] == ComponentKind::Disconnector && p[3] == ComponentKind::Disconnector;
}

// Two or more chained {Disconnector, Breaker, Disconnector} segments.
bool is_dbd_chain(const std::vector<ComponentKind>& p) {
  if (p.size() < 6 || p.size() % 3 != 0) return false;
  for (std::size_t i = 0; i < p.size(); i += 3)
    if (p[i] != ComponentKind::Disconnector || p[i + 1] != ComponentKind::Breaker ||
        p[i + 2] != ComponentKind::Disconnector)
      return false;
  return true;
}

// The two-bus classifier. Fills bypass_bus for MainAndBypass.
BusScheme classify_pair(const SubstationGraph& g, const std::string& a, const std::string& b,
                        std::optional<std::string>* bypass, std::vector<std::string>* diags) {
  auto paths = inter_bus_paths(g, a, b);

  int dd = 0, dbd = 0, dbdd = 0, ddbd = 0, chain = 0;
  for (const auto& p : paths) {
    if (is_dd(p)) ++dd;
    else if (is_dbd(p)) ++dbd;
    else if (is_dbdd(p)) ++dbdd;
    else if (is_dbd_chain(p)) ++chain;
    else if (p.size() == 4 && p[0] == ComponentKind::Disconnector &&
             p[1] == ComponentKind::Disconnector && p[2] == ComponentKind::Breaker &&
             p[3] == ComponentKind::Disconnector)
      ++ddbd;  // bypass tie read from the bypass side
  }

  if (chain >= 1) return BusScheme::BreakerAndHalfOrDBDB;
  if (dbdd >= 2 || ddbd >= 2) {
    // The bypass bus sits next to the two consecutive disconnectors.
    if (bypass) *bypass = (dbdd >= 2) ? b : a;
    return BusScheme::MainAndBypass;
  }
  if (dd >= 2) return BusScheme::DoubleBusSingleBreaker;
  if (paths.size() == 1 && dbd == 1) {
    // Each bus must keep at least one private branch of its own.
    auto private_count = [&](const std::string& bus, const std::string& peer) {
      int n = 0;
      for (const Branch& br : find_branches(g, bus))
        if (!br.other_bus || *br.other_bus != peer) ++n;
      return n;
    };
    if (private_count(a, b) >= 1 && private_count(b, a) >= 1)
      return BusScheme::SingleBusWithSectionalizer;
    if (diags)
      diags->push_back("single {D,B,D} tie but a bus has no private branch between " + a +
                       " and " + b);
    return BusScheme::UnrecognizedScheme;
  }
  if (diags) {
    std::ostringstream os;
    os << "no recognized tie signature between " << a << " and " << b << " (" << paths.size()
       << " tie paths)";
    diags->push_back(os.str());
  }
  return BusScheme::UnrecognizedScheme;
}

}  // namespace

BusScheme classify_scheme(const SubstationGraph& g, VoltageRegion& region,
                          std::vector<std::string>* diagnostics) {
  const auto& buses = region.buses;
  if (buses.empty()) return BusScheme::UnrecognizedScheme;
  if (buses.size() == 1) {
    region.scheme = BusScheme::SingleBus;
    return region.scheme;
  }
  if (buses.size() == 2) {
    std::optional<std::string> bypass;
    region.scheme = classify_pair(g, buses[0], buses[1], &bypass, diagnostics);
    region.bypass_bus = bypass;
    return region.scheme;
  }

  // Three or four buses: apply the two-bus classifier to connected pairs.
  // A clean partition into identically-classified pairs adopts that scheme;
  // anything else falls back to parallel single-bus rows with a diagnostic.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> used;
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (used.count(buses[i])) continue;
    for (std::size_t j = i + 1; j < buses.size(); ++j) {
      if (used.count(buses[j])) continue;
      if (!inter_bus_paths(g, buses[i], buses[j]).empty()) {
        pairs.emplace_back(buses[i], buses[j]);
        used.insert(buses[i]);
        used.insert(buses[j]);
        break;
      }
    }
  }
  if (used.size() == buses.size() && !pairs.empty()) {
    BusScheme common = BusScheme::UnrecognizedScheme;
    bool consistent = true;
    for (const auto& [a, b] : pairs) {
      std::optional<std::string> bypass;
      BusScheme s = classify_pair(g, a, b, &bypass, diagnostics);
      if (s == BusScheme::UnrecognizedScheme) consistent = false;
      if (common == BusScheme::UnrecognizedScheme) common = s;
      else if (s != common) consistent = false;
    }
    if (consistent && common != BusScheme::UnrecognizedScheme) {
      region.scheme = common;
      if (diagnostics)
        diagnostics->push_back("region with " + std::to_string(buses.size()) +
                               " buses classified pairwise as " + std::string(to_string(common)) +
                               "; drawn as stacked rows");
      return region.scheme;
    }
  }
  if (diagnostics)
    diagnostics->push_back("region with " + std::to_string(buses.size()) +
                           " buses has no recognized pairing; drawn as stacked single-bus rows");
  region.scheme = BusScheme::UnrecognizedScheme;
  return region.scheme;
}

std::vector<Branch> region_branches(const SubstationGraph& g, const VoltageRegion& region) {
  std::vector<Branch> out;
  std::map<std::vector<std::string>, std::size_t> seen;  // sorted member set -> index

  for (const std::string& bus : region.buses) {
    for (Branch& b : find_branches(g, bus)) {
      std::vector<std::string> key = b.members;
      std::sort(key.begin(), key.end());
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), out.size());
        out.push_back(std::move(b));
        continue;
      }
      // Mirror of a shared branch: keep the view owned by the id-first bus.
      Branch& kept = out[it->second];
      if (assign_branch_owner(b) == b.owner_bus && kept.owner_bus > b.owner_bus) kept = std::move(b);
    }
  }
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) {
    return std::tie(a.owner_bus, a.head) < std::tie(b.owner_bus, b.head);
  });
  return out;
}

}  // namespace sld
