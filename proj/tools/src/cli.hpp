#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcf::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kInsufficientData = 3;
inline constexpr int kIllConditioned = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcf::cli
