#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace podselect::cli {

// args excludes the program name. Returns the exit code: 0 ok, 1 runtime or
// I/O failure, 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace podselect::cli
