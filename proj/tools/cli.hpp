#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edr::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParse = 2,
  kReductionFailed = 3,
  kTooLarge = 4,
  kUnsupported = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes through a sibling temp file and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace edr::cli
