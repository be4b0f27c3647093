#pragma once

// Command-line front end. run_cli is the whole program minus process setup so
// tests can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace firemem::cli {

// Exit status: 0 when an answer was computed (including a negative one),
// 1 on usage errors, 2 on operational errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// FNV-1a 64-bit digest of a byte string, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace firemem::cli
