#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tslab {

/// Runs the command line given without the program name. Returns 0 on
/// success, 1 when a checked inequality or an asserted membership fails and
/// 2 on usage, input or limit errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tslab
