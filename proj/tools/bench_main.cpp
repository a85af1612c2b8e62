// Compares the serial reference paths against the OpenMP kernels on a
// synthetic corpus: batch generation (per-substation fan-out) and the
// pairwise decency checks. Prints wall times, speedup, and whether the
// parallel output matched the serial output byte for byte.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sld/batch.hpp"
#include "sld/cime.hpp"
#include "sld/graph.hpp"
#include "sld/layout.hpp"
#include "sld/synth.hpp"
#include "sld/validate.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<std::string, std::string> slurp_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream f(entry.path(), std::ios::binary);
    files[entry.path().filename().string()] =
        std::string(std::istreambuf_iterator<char>(f), {});
  }
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  int count = argc > 1 ? std::atoi(argv[1]) : 240;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 20260818ull;
  int threads = 8;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#else
  std::printf("built without OpenMP; the parallel columns run the serial path\n");
#endif

  std::printf("corpus: %d substations, seed %llu, %d threads\n\n", count,
              static_cast<unsigned long long>(seed), threads);

  sld::SynthOptions synth;
  synth.count = count;
  synth.seed = seed;
  sld::ModelStore store = sld::parse_cime(sld::generate_corpus_cime(synth));
  std::vector<std::string> names = store.substation_names();
  sld::LayoutConfig cfg;

  std::vector<sld::LayoutDiagram> diagrams;
  diagrams.reserve(names.size());
  for (const std::string& name : names) {
    sld::SubstationGraph g = sld::build_graph(store.substation_records(name));
    diagrams.push_back(sld::layout_substation(g, name, cfg));
  }

  // Pairwise decency kernels on every diagram, serial then parallel.
  auto t0 = std::chrono::steady_clock::now();
  std::vector<sld::DecencyReport> serial_reports;
  for (const auto& d : diagrams) serial_reports.push_back(sld::validate(d, cfg, false));
  double validate_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<sld::DecencyReport> parallel_reports;
  for (const auto& d : diagrams) parallel_reports.push_back(sld::validate(d, cfg, true));
  double validate_parallel = seconds_since(t0);

  bool validate_same = true;
  for (std::size_t i = 0; i < serial_reports.size(); ++i) {
    const auto& a = serial_reports[i];
    const auto& b = parallel_reports[i];
    if (a.passed != b.passed || a.overlaps != b.overlaps || a.dangling != b.dangling ||
        a.out_of_region != b.out_of_region || a.crossing_count != b.crossing_count)
      validate_same = false;
  }

  // Whole-batch generation, one worker then all of them.
  std::filesystem::path out1 = std::filesystem::temp_directory_path() / "sldbench_j1";
  std::filesystem::path outn = std::filesystem::temp_directory_path() / "sldbench_jn";
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(outn);

  sld::BatchOptions opt;
  opt.config = cfg;
  opt.out_dir = out1.string();
  opt.jobs = 1;
  t0 = std::chrono::steady_clock::now();
  sld::BatchResult r1 = sld::generate_batch(store, names, opt);
  double batch_serial = seconds_since(t0);

  opt.out_dir = outn.string();
  opt.jobs = threads;
  t0 = std::chrono::steady_clock::now();
  sld::BatchResult rn = sld::generate_batch(store, names, opt);
  double batch_parallel = seconds_since(t0);

  bool batch_same = r1.failures == rn.failures && slurp_dir(out1) == slurp_dir(outn);
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(outn);

  std::printf("%-18s %10s %10s %8s %10s\n", "kernel", "serial s", "parallel s", "speedup",
              "identical");
  std::printf("%-18s %10.3f %10.3f %7.2fx %10s\n", "validate pairwise", validate_serial,
              validate_parallel, validate_serial / std::max(validate_parallel, 1e-9),
              validate_same ? "yes" : "NO");
  std::printf("%-18s %10.3f %10.3f %7.2fx %10s\n", "batch generate", batch_serial,
              batch_parallel, batch_serial / std::max(batch_parallel, 1e-9),
              batch_same ? "yes" : "NO");
  return (validate_same && batch_same) ? 0 : 1;
}
