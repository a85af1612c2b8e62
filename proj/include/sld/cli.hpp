#pragma once

namespace sld {

/// Entry point behind the sldkit binary. Subcommands: generate, validate,
/// list. Exit codes: 0 success, 1 input/parse error, 2 layout or decency
/// failures, 3 bad flags.
int run_cli(int argc, const char* const* argv);

}  // namespace sld
