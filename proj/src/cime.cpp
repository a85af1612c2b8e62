#include "sld/cime.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sld {

namespace {

const char* kKindNames[kEntityKindCount] = {
    "Substation", "Bus",           "Breaker",       "Disconnector", "ACLine",
    "Load",       "Transformer2W", "Transformer3W", "Compensator",  "GenUnit",
};

struct FieldSpec {
  std::vector<std::string> required;  // exact header vocabulary for the kind
};

// Header vocabulary per kind. Field order in the file is free; the set is not.
const FieldSpec& field_spec(EntityKind k) {
  static const std::map<EntityKind, FieldSpec> specs = {
      {EntityKind::Substation, {{"id", "name"}}},
      {EntityKind::Bus, {{"id", "name", "volt", "node", "st"}}},
      {EntityKind::Breaker, {{"id", "name", "volt", "node_i", "node_j", "point", "st"}}},
      {EntityKind::Disconnector, {{"id", "name", "volt", "node_i", "node_j", "point", "st"}}},
      {EntityKind::ACLine, {{"id", "name", "volt", "node_i", "node_j", "st"}}},
      {EntityKind::Load, {{"id", "name", "volt", "node", "st"}}},
      {EntityKind::Transformer2W,
       {{"id", "name", "volt_i", "volt_j", "node_i", "node_j", "st"}}},
      {EntityKind::Transformer3W,
       {{"id", "name", "volt_i", "volt_j", "volt_k", "node_i", "node_j", "node_k", "st"}}},
      {EntityKind::Compensator, {{"id", "name", "volt", "node", "st"}}},
      {EntityKind::GenUnit, {{"id", "name", "volt", "node", "st"}}},
  };
  return specs.at(k);
}

bool is_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t");
  return pos != std::string::npos && line.compare(pos, 2, "//") == 0;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

// Whitespace-separated tokens; single quotes group a token with spaces.
// Quotes carry no escapes and may not appear inside a token.
std::vector<std::string> tokenize(const std::string& line, int lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= n) break;
    if (line[i] == '\'') {
      std::size_t close = line.find('\'', i + 1);
      if (close == std::string::npos)
        throw ParseError(ParseErrorKind::BadRecord, lineno, "unterminated quoted name");
      out.push_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
      if (i < n && line[i] != ' ' && line[i] != '\t')
        throw ParseError(ParseErrorKind::BadRecord, lineno,
                         "quoted name must be followed by whitespace");
    } else {
      std::size_t start = i;
      while (i < n && line[i] != ' ' && line[i] != '\t') {
        if (line[i] == '\'')
          throw ParseError(ParseErrorKind::BadRecord, lineno, "quote inside unquoted token");
        ++i;
      }
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

long long parse_int(const std::string& tok, int lineno, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(ParseErrorKind::BadRecord, lineno,
                     std::string("bad ") + what + " value '" + tok + "'");
  return v;
}

double parse_kv(const std::string& tok, int lineno) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ParseErrorKind::BadRecord, lineno, "bad volt value '" + tok + "'");
  }
}

Record make_record(EntityKind kind, const std::vector<std::string>& header,
                   const std::vector<std::string>& values, int lineno) {
  Record r;
  r.kind = kind;
  r.line = lineno;
  std::map<std::string, const std::string*> byname;
  for (std::size_t i = 0; i < header.size(); ++i) byname[header[i]] = &values[i];

  auto field = [&](const char* name) -> const std::string& { return *byname.at(name); };

  r.id = parse_int(field("id"), lineno, "id");
  r.name = field("name");
  if (r.name.empty() || r.name == "NULL")
    throw ParseError(ParseErrorKind::BadRecord, lineno, "record is missing a name");

  auto add_volt = [&](const char* name) { r.volts.push_back(parse_kv(field(name), lineno)); };
  auto add_node = [&](const char* name, bool optional) {
    const std::string& tok = field(name);
    if (tok == "NULL") {
      if (!optional)
        throw ParseError(ParseErrorKind::BadRecord, lineno,
                         std::string("field ") + name + " must not be NULL");
      return;
    }
    r.nodes.push_back(parse_int(tok, lineno, name));
  };

  switch (kind) {
    case EntityKind::Substation:
      r.st = r.name;
      break;
    case EntityKind::Bus:
    case EntityKind::Load:
    case EntityKind::Compensator:
    case EntityKind::GenUnit:
      add_volt("volt");
      add_node("node", false);
      r.st = field("st");
      break;
    case EntityKind::Breaker:
    case EntityKind::Disconnector: {
      add_volt("volt");
      add_node("node_i", false);
      add_node("node_j", false);
      const std::string& pt = field("point");
      if (pt == "0")
        r.closed = false;
      else if (pt == "1")
        r.closed = true;
      else
        throw ParseError(ParseErrorKind::BadRecord, lineno, "bad point value '" + pt + "'");
      r.st = field("st");
      break;
    }
    case EntityKind::ACLine:
      add_volt("volt");
      add_node("node_i", false);
      add_node("node_j", true);  // far terminal may leave the station
      r.st = field("st");
      break;
    case EntityKind::Transformer2W:
      add_volt("volt_i");
      add_volt("volt_j");
      add_node("node_i", false);
      add_node("node_j", false);
      r.st = field("st");
      break;
    case EntityKind::Transformer3W:
      add_volt("volt_i");
      add_volt("volt_j");
      add_volt("volt_k");
      add_node("node_i", false);
      add_node("node_j", false);
      add_node("node_k", false);
      r.st = field("st");
      break;
  }
  if (r.st.empty() || r.st == "NULL")
    throw ParseError(ParseErrorKind::BadRecord, lineno, "record is missing an st value");
  return r;
}

}  // namespace

std::string_view to_string(EntityKind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<EntityKind> entity_kind_from(std::string_view name) {
  for (int i = 0; i < kEntityKindCount; ++i)
    if (name == kKindNames[i]) return static_cast<EntityKind>(i);
  return std::nullopt;
}

std::vector<std::string> ModelStore::substation_names() const {
  std::vector<std::string> out;
  out.reserve(by_substation.size());
  for (const auto& [name, _] : by_substation) out.push_back(name);
  return out;
}

std::vector<Record> ModelStore::substation_records(const std::string& name) const {
  std::vector<Record> out;
  auto it = by_substation.find(name);
  if (it == by_substation.end()) return out;
  out.reserve(it->second.size());
  for (std::size_t idx : it->second) out.push_back(records[idx]);
  return out;
}

ModelStore parse_cime(std::string_view text) {
  ModelStore store;
  std::set<EntityKind> seen_blocks;
  std::map<EntityKind, std::set<long long>> ids;

  EntityKind block_kind = EntityKind::Substation;
  bool in_block = false;
  int block_line = 0;
  std::vector<std::string> header;
  bool have_header = false;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line) || is_comment(line)) continue;

    auto first = line.find_first_not_of(" \t");
    std::string body = line.substr(first);

    if (!in_block) {
      if (body.size() >= 3 && body.front() == '<' && body.back() == '>' && body[1] != '/') {
        std::string name = body.substr(1, body.size() - 2);
        auto kind = entity_kind_from(name);
        if (!kind)
          throw ParseError(ParseErrorKind::UnknownEntity, lineno, "unknown entity <" + name + ">");
        if (!seen_blocks.insert(*kind).second)
          throw ParseError(ParseErrorKind::DuplicateBlock, lineno,
                           "entity <" + name + "> appears more than once");
        block_kind = *kind;
        in_block = true;
        block_line = lineno;
        header.clear();
        have_header = false;
        continue;
      }
      throw ParseError(ParseErrorKind::BadRecord, lineno, "expected an entity block, got: " + body);
    }

    // Inside a block.
    const EntityKind cur = block_kind;
    if (body.size() >= 4 && body.compare(0, 2, "</") == 0 && body.back() == '>') {
      std::string name = body.substr(2, body.size() - 3);
      if (name != to_string(cur))
        throw ParseError(ParseErrorKind::UnterminatedBlock, block_line,
                         std::string("block <") + std::string(to_string(cur)) +
                             "> closed by </" + name + ">");
      in_block = false;
      continue;
    }
    if (body.size() >= 2 && body.front() == '<')
      throw ParseError(ParseErrorKind::UnterminatedBlock, block_line,
                       std::string("block <") + std::string(to_string(cur)) +
                           "> is missing its closing tag");

    if (body.front() == '@') {
      if (have_header)
        throw ParseError(ParseErrorKind::BadRecord, lineno, "duplicate header line");
      header = tokenize(body.substr(1), lineno);
      const auto& spec = field_spec(cur).required;
      auto sorted_header = header;
      std::sort(sorted_header.begin(), sorted_header.end());
      auto sorted_spec = spec;
      std::sort(sorted_spec.begin(), sorted_spec.end());
      if (sorted_header != sorted_spec) {
        std::ostringstream os;
        os << "header for <" << to_string(cur) << "> must name exactly {";
        for (std::size_t i = 0; i < spec.size(); ++i) os << (i ? " " : "") << spec[i];
        os << "}";
        throw ParseError(ParseErrorKind::HeaderMismatch, lineno, os.str());
      }
      have_header = true;
      continue;
    }

    if (body.front() == '#') {
      if (!have_header)
        throw ParseError(ParseErrorKind::HeaderMismatch, lineno, "record before header line");
      auto values = tokenize(body.substr(1), lineno);
      if (values.size() != header.size()) {
        std::ostringstream os;
        os << "record has " << values.size() << " fields, header has " << header.size();
        throw ParseError(ParseErrorKind::HeaderMismatch, lineno, os.str());
      }
      Record r = make_record(cur, header, values, lineno);
      if (!ids[cur].insert(r.id).second)
        throw ParseError(ParseErrorKind::DuplicateId, lineno,
                         std::string(to_string(cur)) + " id " + std::to_string(r.id) +
                             " appears more than once");
      store.records.push_back(std::move(r));
      continue;
    }
    throw ParseError(ParseErrorKind::BadRecord, lineno, "unexpected line inside block: " + body);
  }
  if (in_block)
    throw ParseError(ParseErrorKind::UnterminatedBlock, block_line,
                     std::string("block <") + std::string(to_string(*block)) +
                         "> is missing its closing tag");

  for (std::size_t i = 0; i < store.records.size(); ++i)
    store.by_substation[store.records[i].st].push_back(i);
  return store;
}

ModelStore parse_cime_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseErrorKind::BadRecord, 0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cime(buf.str());
}

std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::UnterminatedBlock: return "UnterminatedBlock";
    case ParseErrorKind::HeaderMismatch: return "HeaderMismatch";
    case ParseErrorKind::UnknownEntity: return "UnknownEntity";
    case ParseErrorKind::DuplicateId: return "DuplicateId";
    case ParseErrorKind::DuplicateBlock: return "DuplicateBlock";
    case ParseErrorKind::BadRecord: return "BadRecord";
  }
  return "ParseError";
}

std::string_view to_string(GraphErrorKind k) {
  switch (k) {
    case GraphErrorKind::DanglingNode: return "DanglingNode";
    case GraphErrorKind::DuplicateComponentId: return "DuplicateComponentId";
    case GraphErrorKind::UnknownComponent: return "UnknownComponent";
  }
  return "GraphError";
}

std::string_view to_string(LayoutErrorKind k) {
  switch (k) {
    case LayoutErrorKind::TooManyLevels: return "TooManyLevels";
    case LayoutErrorKind::NoBuses: return "NoBuses";
  }
  return "LayoutError";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), kind_(kind), line_(line) {}

GraphError::GraphError(GraphErrorKind kind, const std::string& msg)
    : std::runtime_error(msg), kind_(kind) {}

LayoutError::LayoutError(LayoutErrorKind kind, const std::string& msg)
    : std::runtime_error(msg), kind_(kind) {}

}  // namespace sld
