#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndncec {

// Full CLI entry point: subcommands calibrate, run, sweep, privacy, report.
// Exit 0 on success, 1 on configuration errors, 2 on timing-constraint
// violations. Callable in-process for tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

} // namespace ndncec
