#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spliceca::cli {

/// Entry point of the `spliceca` tool: train, eval, predict, scan, bench.
/// Returns the process exit status; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spliceca::cli
