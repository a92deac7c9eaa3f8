#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dmg/field.hpp"

namespace dmg::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kUsage = 1, kDivergence = 2 };

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Values of a grid file.
///
/// Format: a first line `dim,n`, then the n^dim values (boundary included)
/// with the first index fastest, one grid row of n comma-separated values per
/// line. A literal `dim,n` header line before the sizes is accepted.
struct GridData {
  int dim = 2;
  int n = 0;
  std::vector<double> values;
};

GridData read_grid_csv(std::istream& in);
void write_grid_csv(std::ostream& out, const Field& field);

/// Copies the interior values onto the hierarchy's finest level.
Field to_field(const GridData& data, const Hierarchy& hierarchy);

}  // namespace dmg::cli
