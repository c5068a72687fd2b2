#pragma once

#include <string>
#include <vector>

namespace radlab {

// Exit codes: 0 success, 2 validation error, 3 numerical non-certification,
// 64 usage error.
int cli_run(const std::vector<std::string>& args);
int cli_run(int argc, char** argv);

}  // namespace radlab
