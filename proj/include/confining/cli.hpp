#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Batch front-end over the library: subcommand dispatch, config ingestion and
// report emission.  Kept in the library so it can be driven in-process.

namespace confining {

// args exclude the program name; reports go to --out or to `out` when no path
// is given, diagnostics to `err`.  Returns the process exit code: 0 success,
// 1 a verified inequality or invariant failed (or a runtime fault), 2 usage,
// schema or domain errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// convenience overload writing to std::cout / std::cerr
int run_cli(const std::vector<std::string>& args);

}  // namespace confining
