#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ngonstab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitUsage = 64;

// args excludes the program name. Reports go to out (or --out), diagnostics
// to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Range {
  double start = 0;
  double stop = 0;
  double step = 0;
};

// "A:B:STEP" with STEP > 0 and B >= A. Throws std::invalid_argument.
Range parse_range(const std::string& text);

// start + i * step for i = 0.. while the value stays within stop (+1e-9 step).
std::vector<double> range_values(const Range& r);

}  // namespace ngonstab::cli
