#include "sld/config.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace sld {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_double(const std::string& s, double* out) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !(v > 0)) return false;
    *out = v;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

bool kind_from_key(const std::string& s, ComponentKind* out) {
  static const std::pair<const char*, ComponentKind> table[] = {
      {"bus", ComponentKind::Bus},
      {"breaker", ComponentKind::Breaker},
      {"disconnector", ComponentKind::Disconnector},
      {"acline", ComponentKind::ACLine},
      {"load", ComponentKind::Load},
      {"transformer2w", ComponentKind::Transformer2W},
      {"transformer3w", ComponentKind::Transformer3W},
      {"compensator", ComponentKind::Compensator},
      {"genunit", ComponentKind::GenUnit},
  };
  for (const auto& [name, kind] : table)
    if (s == name) {
      *out = kind;
      return true;
    }
  return false;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

bool LayoutConfig::apply(const std::string& key, const std::string& value) {
  std::string k = lower(trim(key));
  std::string v = trim(value);
  if (k == "grid_unit") return parse_double(v, &grid_unit);
  if (k == "branch_gap") return parse_double(v, &branch_gap);
  if (k == "min_bus_length") return parse_double(v, &min_bus_length);
  if (k == "region_margin") return parse_double(v, &region_margin);

  // extent.<kind> = <w>x<h>
  if (k.rfind("extent.", 0) == 0) {
    ComponentKind kind;
    if (!kind_from_key(k.substr(7), &kind)) return false;
    std::size_t x = v.find('x');
    if (x == std::string::npos) return false;
    Extent e;
    if (!parse_double(v.substr(0, x), &e.w) || !parse_double(v.substr(x + 1), &e.h)) return false;
    set_extent(kind, e);
    return true;
  }
  return false;
}

LayoutConfig LayoutConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  LayoutConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    if (!cfg.apply(t.substr(0, eq), t.substr(eq + 1)))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad config entry: " + t);
  }
  return cfg;
}

}  // namespace sld
