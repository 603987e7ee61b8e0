#pragma once

// Command-line front end: eval, verify, deform-check and dims.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohft/state_space.hpp"
#include "cohft/sweep.hpp"

namespace cohft {

enum class ExitCode : int { Pass = 0, Counterexample = 1, Validation = 2, Io = 3 };

enum class ReportFormat : std::uint8_t { Json, Csv, Text };
ReportFormat parse_report_format(std::string_view text);

struct SweepConfig {
  int h = 0;
  int m = 0;
  int deg = 0;
  Mode mode = Mode::Graded;
  SweepBounds bounds;
  std::string output;  // empty: standard output
  ReportFormat format = ReportFormat::Json;
};

/// Comma-separated basis tokens; "b1,...,b5" expands to b1,b2,b3,b4,b5.
std::vector<BasisVector> parse_insertions(std::string_view text);

/// Graded when deg = m mod 2, else ungraded when deg is even; otherwise the
/// graded parity rule is reported as violated.
Mode resolve_mode(int deg, int m);

/// Runs the command line; never throws. Reads COHFT_JOBS, which overrides --jobs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohft
