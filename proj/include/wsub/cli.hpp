#ifndef WSUB_CLI_HPP
#define WSUB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wsub {

/// Exit codes: 0 when every verdict passes, 1 on a failing verdict, 2 on
/// usage, input or numerical errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wsub

#endif
