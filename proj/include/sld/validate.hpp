#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sld/config.hpp"
#include "sld/layout.hpp"

namespace sld {

/// Decency report for one diagram. A diagram passes iff overlaps, dangling
/// and out_of_region are all empty; crossings are informational.
struct DecencyReport {
  std::vector<std::pair<std::string, std::string>> overlaps;  // component id pairs, a < b
  std::vector<std::string> dangling;       // "<a>--<b>" tags with a loose endpoint
  std::vector<std::string> out_of_region;  // component ids outside their frame
  long long crossing_count = 0;
  bool passed = false;
};

/// Checks one diagram. Symbol boxes are closed, rotated per orientation, and
/// must keep at least 1 unit of clearance (touching counts as overlap).
/// Polyline endpoints must land on a port of their named component or on
/// their named bus segment. Placements must stay inside their region frame
/// expanded by region_margin. Crossing counts only transversal interior
/// intersections; contact between a bus and its attached connectors is not a
/// crossing. `parallel` switches the pairwise kernels to OpenMP; results are
/// identical to the serial reference.
DecencyReport validate(const LayoutDiagram& d, const LayoutConfig& cfg, bool parallel = false);

struct CorpusReport {
  long long total = 0;
  long long passed = 0;
  std::optional<double> pass_rate;  // empty for an empty corpus ("n/a")
  std::map<std::string, long long> defect_histogram;
};

CorpusReport corpus_report(const std::vector<std::pair<std::string, DecencyReport>>& reports);

}  // namespace sld
