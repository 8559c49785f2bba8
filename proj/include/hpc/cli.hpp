#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hpc::cli {

/// Shared entry point for the binary and the in-process CLI tests.
/// args excludes the program name. Returns 0 on success, 1 on usage
/// errors, 2 on runtime errors. The resolved configuration of every run
/// is echoed to err before execution.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace hpc::cli
