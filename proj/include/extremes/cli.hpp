#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace extremes::cli {

/// Runs one `extremes` subcommand. `args` excludes the program name.
/// Reports go to the --out/--csv files, or the JSON report to `out` when
/// --out is absent. Returns the process exit status; errors are described
/// on `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extremes::cli
