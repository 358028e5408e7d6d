#ifndef LEIBNIZ_CLI_HPP
#define LEIBNIZ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace leibniz::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Runs the tool with `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the tool's data files: LEIBNIZ_DATA_DIR if set,
/// otherwise the directory configured at build time.
std::string default_data_dir();

} // namespace leibniz::cli

#endif
