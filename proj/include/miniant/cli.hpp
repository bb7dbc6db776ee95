#ifndef MINIANT_CLI_HPP
#define MINIANT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace miniant::cli {

// Runs one subcommand (`optimize`, `generate`, `train-eval`, `reproduce`,
// `timing`) with the given arguments, excluding the program name.
// Exit codes: 0 success, 1 usage/config error, 2 data/validation error,
// 3 failed check in `reproduce`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace miniant::cli

#endif
