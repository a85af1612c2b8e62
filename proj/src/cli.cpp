#include "sld/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sld/batch.hpp"
#include "sld/cime.hpp"
#include "sld/config.hpp"

namespace sld {

namespace {

void log_line(const char* level, const std::string& substation, const std::string& code,
              const std::string& msg) {
  std::cerr << level << " substation=" << substation << " code=" << code << " msg=" << msg
            << "\n";
}

struct CommonArgs {
  std::string input;
  std::vector<std::string> substations;
  std::string out_dir = ".";
  std::string config_path;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out) {
  cmd->add_option("-i,--input", args.input, "CIM/E model file")->required();
  cmd->add_option("-s,--substation", args.substations,
                  "substation name (repeatable; default: all in the file)");
  if (with_out) cmd->add_option("-o,--out", args.out_dir, "output directory");
  cmd->add_option("-c,--config", args.config_path, "layout config file");
  cmd->add_option("-j,--jobs", args.jobs, "worker count (>1 enables parallel batches)")
      ->check(CLI::PositiveNumber);
}

int load_inputs(const CommonArgs& args, ModelStore& store, LayoutConfig& cfg,
                std::vector<std::string>& names) {
  try {
    store = parse_cime_file(args.input);
  } catch (const ParseError& e) {
    log_line("ERROR", "-", std::string(to_string(e.kind())), e.what());
    return 1;
  }
  if (!args.config_path.empty()) {
    try {
      cfg = LayoutConfig::from_file(args.config_path);
    } catch (const std::exception& e) {
      log_line("ERROR", "-", "Config", e.what());
      return 1;
    }
  }
  if (args.substations.empty()) {
    names = store.substation_names();
  } else {
    bool missing = false;
    for (const std::string& s : args.substations) {
      if (store.by_substation.find(s) == store.by_substation.end()) {
        log_line("ERROR", s, "UnknownSubstation", "not present in " + args.input);
        missing = true;
      }
    }
    if (missing) return 1;
    names = args.substations;
  }
  return 0;
}

void report_outcome(const std::string& name, bool ok, const std::string& code,
                    const std::string& msg, const std::vector<std::string>& warnings) {
  if (!ok) log_line("ERROR", name, code, msg);
  for (const std::string& w : warnings) log_line("WARN", name, "Layout", w);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"one-line diagram toolkit for CIM/E substation models", "sldkit"};
  app.require_subcommand(1);

  CommonArgs gen_args, val_args;
  std::string list_input;
  std::vector<std::string> formats{"json", "svg"};

  CLI::App* gen = app.add_subcommand("generate", "lay out substations and write JSON/SVG files");
  add_common(gen, gen_args, true);
  gen->add_option("-f,--format", formats, "output formats: json, svg")
      ->check(CLI::IsMember({"json", "svg"}));

  CLI::App* val = app.add_subcommand("validate", "lay out substations and check drawing decency");
  add_common(val, val_args, true);

  CLI::App* lst = app.add_subcommand("list", "print the substation names in a model file");
  lst->add_option("-i,--input", list_input, "CIM/E model file")->required();

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  if (lst->parsed()) {
    ModelStore store;
    try {
      store = parse_cime_file(list_input);
    } catch (const ParseError& e) {
      log_line("ERROR", "-", std::string(to_string(e.kind())), e.what());
      return 1;
    }
    for (const std::string& name : store.substation_names()) std::cout << name << "\n";
    return 0;
  }

  if (gen->parsed()) {
    ModelStore store;
    LayoutConfig cfg;
    std::vector<std::string> names;
    if (int rc = load_inputs(gen_args, store, cfg, names)) return rc;

    BatchOptions opt;
    opt.formats = formats;
    opt.out_dir = gen_args.out_dir;
    opt.jobs = gen_args.jobs;
    opt.config = cfg;
    BatchResult result = generate_batch(store, names, opt);
    for (const SubstationOutcome& out : result.outcomes)
      report_outcome(out.name, out.ok, out.error_code, out.message, out.warnings);
    std::cout << names.size() - static_cast<std::size_t>(result.failures) << " of "
              << names.size() << " substations written to " << gen_args.out_dir << "\n";
    return result.failures > 0 ? 2 : 0;
  }

  // validate
  ModelStore store;
  LayoutConfig cfg;
  std::vector<std::string> names;
  if (int rc = load_inputs(val_args, store, cfg, names)) return rc;

  BatchOptions opt;
  opt.out_dir = val_args.out_dir;
  opt.jobs = val_args.jobs;
  opt.config = cfg;
  ValidateBatchResult result = validate_batch(store, names, opt);
  for (const ValidationOutcome& out : result.outcomes) {
    if (!out.laid_out) {
      log_line("ERROR", out.name, out.error_code, out.message);
    } else if (!out.report.passed) {
      log_line("ERROR", out.name, "Decency",
               std::to_string(out.report.overlaps.size()) + " overlaps, " +
                   std::to_string(out.report.dangling.size()) + " dangling, " +
                   std::to_string(out.report.out_of_region.size()) + " out of region");
    }
  }
  try {
    std::filesystem::create_directories(val_args.out_dir);
    std::string path = (std::filesystem::path(val_args.out_dir) / "decency_report.json").string();
    std::string tmp = path + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << decency_report_json(result);
    }
    std::filesystem::rename(tmp, path);
  } catch (const std::exception& e) {
    log_line("ERROR", "-", "Io", e.what());
    return 1;
  }
  if (result.corpus.pass_rate.has_value())
    std::cout << result.corpus.passed << " of " << result.corpus.total
              << " diagrams decent (rate " << *result.corpus.pass_rate << ")\n";
  else
    std::cout << "no diagrams validated (rate n/a)\n";
  return result.failures > 0 ? 2 : 0;
}

}  // namespace sld
