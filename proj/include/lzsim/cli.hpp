#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lzsim {

// Dispatches one of: glzi | glzi-map | dlzi | trace | t1 | t2 | spectroscopy |
// evolve | analytic.  Writes CSV to --out (default "<subcommand>.csv", placed
// under $LZSIM_OUTPUT_DIR when that is set and the path is relative).
// Returns 0 on success; on failure prints one "error: ..." line to `err`
// and returns nonzero (2 for usage errors).
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace lzsim
