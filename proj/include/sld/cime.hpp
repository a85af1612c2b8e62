#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sld/error.hpp"

namespace sld {

/// Entity table kinds accepted in CIM/E input, one block per kind per file.
enum class EntityKind {
  Substation,
  Bus,
  Breaker,
  Disconnector,
  ACLine,
  Load,
  Transformer2W,
  Transformer3W,
  Compensator,
  GenUnit,
};

inline constexpr int kEntityKindCount = 10;

std::string_view to_string(EntityKind k);
std::optional<EntityKind> entity_kind_from(std::string_view name);

/// One parsed record line. Transformers carry one voltage per winding; the
/// second ACLine node may be absent (the circuit leaves the station).
struct Record {
  EntityKind kind{};
  long long id = 0;
  std::string name;
  std::vector<double> volts;
  std::string st;  // owning substation name; a Substation record owns itself
  std::vector<long long> nodes;
  std::optional<bool> closed;  // Breaker / Disconnector only
  int line = 0;                // 1-based source line of the record
};

/// Parsed model, queryable by substation name.
struct ModelStore {
  std::vector<Record> records;  // file order
  std::map<std::string, std::vector<std::size_t>> by_substation;

  /// Sorted unique substation names.
  std::vector<std::string> substation_names() const;
  /// Records with st == name, in file order. Empty if unknown.
  std::vector<Record> substation_records(const std::string& name) const;
};

ModelStore parse_cime(std::string_view text);
ModelStore parse_cime_file(const std::string& path);

}  // namespace sld
