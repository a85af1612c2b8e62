#include "sld/batch.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sld/emit.hpp"
#include "sld/graph.hpp"
#include "sld/layout.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sld {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct LaidOut {
  bool ok = false;
  std::string error_code, message;
  LayoutDiagram diagram;
};

LaidOut lay_out_one(const ModelStore& store, const std::string& name, const LayoutConfig& cfg) {
  LaidOut r;
  auto it = store.by_substation.find(name);
  if (it == store.by_substation.end()) {
    r.error_code = "UnknownSubstation";
    r.message = "no records for substation " + name;
    return r;
  }
  try {
    SubstationGraph g = build_graph(store.substation_records(name));
    r.diagram = layout_substation(g, name, cfg);
    r.ok = true;
  } catch (const ParseError& e) {
    r.error_code = std::string(to_string(e.kind()));
    r.message = e.what();
  } catch (const GraphError& e) {
    r.error_code = std::string(to_string(e.kind()));
    r.message = e.what();
  } catch (const LayoutError& e) {
    r.error_code = std::string(to_string(e.kind()));
    r.message = e.what();
  } catch (const std::exception& e) {
    r.error_code = "Internal";
    r.message = e.what();
  }
  return r;
}

}  // namespace

BatchResult generate_batch(const ModelStore& store, const std::vector<std::string>& names,
                           const BatchOptions& opt) {
  BatchResult result;
  result.outcomes.resize(names.size());
  fs::create_directories(opt.out_dir);

  bool want_json = std::find(opt.formats.begin(), opt.formats.end(), "json") != opt.formats.end();
  bool want_svg = std::find(opt.formats.begin(), opt.formats.end(), "svg") != opt.formats.end();

  long long n = static_cast<long long>(names.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.jobs)) if (opt.jobs > 1)
#endif
  for (long long i = 0; i < n; ++i) {
    const std::string& name = names[static_cast<std::size_t>(i)];
    SubstationOutcome& out = result.outcomes[static_cast<std::size_t>(i)];
    out.name = name;
    LaidOut laid = lay_out_one(store, name, opt.config);
    if (!laid.ok) {
      out.error_code = laid.error_code;
      out.message = laid.message;
      continue;
    }
    out.warnings = laid.diagram.warnings;
    try {
      fs::path base = fs::path(opt.out_dir) / sanitize(name);
      if (want_json) write_atomic(base.string() + ".layout.json", emit_layout_json(laid.diagram));
      if (want_svg) write_atomic(base.string() + ".svg", emit_svg(laid.diagram, opt.config));
      out.ok = true;
    } catch (const std::exception& e) {
      out.error_code = "Io";
      out.message = e.what();
    }
  }
  for (const SubstationOutcome& out : result.outcomes)
    if (!out.ok) ++result.failures;
  return result;
}

ValidateBatchResult validate_batch(const ModelStore& store, const std::vector<std::string>& names,
                                   const BatchOptions& opt) {
  ValidateBatchResult result;
  result.outcomes.resize(names.size());

  long long n = static_cast<long long>(names.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.jobs)) if (opt.jobs > 1)
#endif
  for (long long i = 0; i < n; ++i) {
    const std::string& name = names[static_cast<std::size_t>(i)];
    ValidationOutcome& out = result.outcomes[static_cast<std::size_t>(i)];
    out.name = name;
    LaidOut laid = lay_out_one(store, name, opt.config);
    if (!laid.ok) {
      out.error_code = laid.error_code;
      out.message = laid.message;
      continue;
    }
    out.laid_out = true;
    out.report = validate(laid.diagram, opt.config, false);
  }

  std::vector<std::pair<std::string, DecencyReport>> pairs;
  for (const ValidationOutcome& out : result.outcomes) {
    if (!out.laid_out) {
      ++result.failures;
      continue;
    }
    if (!out.report.passed) ++result.failures;
    pairs.emplace_back(out.name, out.report);
  }
  result.corpus = corpus_report(pairs);
  return result;
}

std::string decency_report_json(const ValidateBatchResult& r) {
  ordered_json doc;
  doc["total"] = r.corpus.total;
  doc["passed"] = r.corpus.passed;
  if (r.corpus.pass_rate.has_value())
    doc["pass_rate"] = *r.corpus.pass_rate;
  else
    doc["pass_rate"] = nullptr;
  doc["defect_histogram"] = ordered_json::object();
  for (const auto& [key, count] : r.corpus.defect_histogram) doc["defect_histogram"][key] = count;
  doc["substations"] = ordered_json::array();
  for (const ValidationOutcome& out : r.outcomes) {
    ordered_json e;
    e["name"] = out.name;
    e["laid_out"] = out.laid_out;
    if (!out.laid_out) {
      e["error"] = out.error_code;
      e["message"] = out.message;
    } else {
      e["passed"] = out.report.passed;
      e["overlaps"] = out.report.overlaps.size();
      e["dangling"] = out.report.dangling.size();
      e["out_of_region"] = out.report.out_of_region.size();
      e["crossings"] = out.report.crossing_count;
    }
    doc["substations"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sld
