#ifndef WTW_TOOLS_CLI_HPP
#define WTW_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace wtw::cli
{

enum ExitCode { kOk = 0, kFailed = 1, kInputError = 2 };

// Runs one command line (without the program name). Output is fully
// determined by the arguments, the spec contents and WTW_COLOR.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace wtw::cli

#endif
