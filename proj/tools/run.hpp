#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "nfriesz/numeric.hpp"

namespace nfriesz::cli {

enum class Command { coeffs, kernel, verify, scan, selfcheck };
enum class Format { jsonLines, csv };

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
};

/// Parameters as given on the command line; unset ones take per-command defaults.
struct Parameters {
  std::optional<Complex> alpha;
  std::optional<double> k;
  std::optional<double> nu;
  std::optional<double> x;
  std::optional<std::int64_t> nTerms;
  std::optional<std::int64_t> N;
  std::optional<double> tol;
  std::optional<double> T;
  std::optional<Grid> grid;
  std::optional<std::string> route;
};

struct RunConfig {
  Command command = Command::selfcheck;
  std::string fieldFile;
  Parameters parameters;
  std::string outputPath;  // empty: standard output
  Format format = Format::jsonLines;
};

/// "0.25" or "0.25,-1"
Complex parse_alpha(const std::string& text);
/// "lo:hi:points"
Grid parse_grid(const std::string& text);

/// Validates every parameter, computes, writes the artifact. Returns the exit
/// status (0 ok, 1 selfcheck failure or I/O, 2 precondition, 3 nonconvergence);
/// diagnostics go to `diag`.
int run(const RunConfig& config, std::ostream& diag);

/// Quick invariant suite. One PASS/FAIL line per property on `out`.
bool selfcheck(std::ostream& out);

}  // namespace nfriesz::cli
