#pragma once

#include <cstdint>
#include <string>

namespace sld {

/// Options for the synthetic corpus generator. The generator is fully
/// deterministic in (seed, count) and does not depend on platform RNG
/// distributions.
struct SynthOptions {
  std::uint64_t seed = 1;
  int count = 200;
};

/// Emits one CIM/E document holding `count` substations spanning one to four
/// voltage levels, the five recognized busbar schemes, 2..20 branches per
/// bus, and optional two-/three-winding transformers and generator units.
std::string generate_corpus_cime(const SynthOptions& opt);

}  // namespace sld
