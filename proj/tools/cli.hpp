#ifndef DEPSENT_TOOLS_CLI_HPP
#define DEPSENT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace depsent::cli {

/// Runs the command line; args excludes the program name.
/// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depsent::cli

#endif  // DEPSENT_TOOLS_CLI_HPP
