#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdecay::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kGuaranteeNotMet = 3;

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace hyperdecay::cli
