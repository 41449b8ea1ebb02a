#pragma once

#include <string>
#include <vector>

namespace transnli::cli {

// Entry point shared by the binary and the test suites. Returns 0 on
// success, 1 on validation errors, 2 on I/O errors.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace transnli::cli
