#pragma once

#include <string>
#include <vector>

#include "sld/cime.hpp"
#include "sld/config.hpp"
#include "sld/validate.hpp"

namespace sld {

struct BatchOptions {
  std::vector<std::string> formats{"json", "svg"};
  std::string out_dir = ".";
  int jobs = 1;  // 1 = serial reference path; >1 fans out over OpenMP workers
  LayoutConfig config;
};

struct SubstationOutcome {
  std::string name;
  bool ok = false;
  std::string error_code;  // error kind name when !ok
  std::string message;
  std::vector<std::string> warnings;
};

struct BatchResult {
  std::vector<SubstationOutcome> outcomes;  // in input name order
  int failures = 0;
};

/// Lays out and writes each named substation (files are written atomically:
/// temp file + rename). Output bytes are independent of `jobs`.
BatchResult generate_batch(const ModelStore& store, const std::vector<std::string>& names,
                           const BatchOptions& opt);

struct ValidationOutcome {
  std::string name;
  bool laid_out = false;
  std::string error_code;
  std::string message;
  DecencyReport report;
};

struct ValidateBatchResult {
  std::vector<ValidationOutcome> outcomes;
  CorpusReport corpus;
  int failures = 0;  // layout failures + decency failures
};

/// Lays out and validates each named substation in memory.
ValidateBatchResult validate_batch(const ModelStore& store, const std::vector<std::string>& names,
                                   const BatchOptions& opt);

/// Serializes a validation run to the decency_report.json document.
std::string decency_report_json(const ValidateBatchResult& r);

}  // namespace sld
