#ifndef CITEFOREST_TOOLS_CLI_HPP
#define CITEFOREST_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace citeforest::cli {

/// Runs one command line. Subcommands may be chained and run in the order
/// given, sharing the loaded corpus, forest and levels, e.g.
///   citeforest --corpus c.csv simplify --selector random --seed 7 export --view simplified --format json
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace citeforest::cli

#endif  // CITEFOREST_TOOLS_CLI_HPP
