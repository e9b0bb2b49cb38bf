#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iso::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kNegative = 3,
  kInconsistent = 4,
};

// Runs `iso <args...>` (args excludes the program name). Reports go to `out`
// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// ISO_CALIBRATION if set, else data/calibration.json under the working directory.
std::string calibration_path();

}  // namespace iso::cli
