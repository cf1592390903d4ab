#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcx::cli {

/// 0 computed (hypothesis failures included), 1 input or validation error,
/// 2 INCONSISTENT detected, 3 budget exceeded with no conclusion.
enum Exit : int { Ok = 0, InputError = 1, Inconsistent = 2, Budget = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcx::cli
