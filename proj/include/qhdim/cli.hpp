#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhdim {

// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 runtime failure (for example an exhausted certifier budget).
int cli_main(int argc, char** argv);

// Same as cli_main with argv[0] omitted, writing to the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhdim
