#ifndef LNLAPLACE_CLI_HPP
#define LNLAPLACE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lnlaplace::cli {

// Exit status: 0 success, 2 validation failure, 3 numeric failure.
// Subcommands: eval, table, density, thorin, leipnik-demo. Record streams
// go to `out` (or --out <path>); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lnlaplace::cli

#endif
