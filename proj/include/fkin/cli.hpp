#pragma once

// Command-line front end: `eval`, `sweep` and `verify`.
//
// Options may also come from a key=value file given with --config; values on
// the command line take precedence over the file, and FRAC_KINETICS_MAX_TERMS
// supplies the default for --max-terms.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fkin/kinetics.hpp"
#include "fkin/oracle.hpp"
#include "fkin/special.hpp"

namespace fkin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

/// Relative residual threshold for `verify`.
inline constexpr double kVerifyTolerance = 5e-4;

/// Runs the command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 15 significant digits, '.' decimal point regardless of locale.
std::string format_value(double value);

/// Comma-separated list of reals.
std::vector<double> parse_list(std::string_view text);

struct SweepSpec {
  Variant variant = Variant::thm1;
  std::vector<double> k_values{1.0};
  std::vector<double> upsilon_values{0.5, 1.0, 1.5, 2.0};
  double n0 = 1.0;
  double d = 1.0;
  double c = 1.0;
  double l = 1.0;
  std::optional<double> a;
  ExponentReading reading = ExponentReading::consistent;
  double t_min = 0.0;
  double t_max = 1.0;
  int points = 101;
  SeriesControl ctl{};
  std::string output;

  void validate() const;
  KineticProblem problem(double k, double upsilon) const;
  std::vector<double> grid() const;
};

struct SweepCell {
  double k = 1.0;
  double upsilon = 1.0;
  std::string name;  // N_k<k>_v<upsilon>
  std::vector<double> n;
  bool nondecreasing = true;
  bool positive = true;  // N > 0 at every t > 0
};

struct SweepResult {
  std::vector<double> t;
  std::vector<SweepCell> cells;  // k outer, upsilon inner
};

SweepResult run_sweep(const SweepSpec& spec);
std::string to_csv(const SweepResult& result);

struct VerifyReport {
  ResidualReport residual;
  double max_abs_n = 0.0;
  double relative_defect = 0.0;
  /// max |closed form - Volterra march| / max |N|
  double relative_oracle_gap = 0.0;
  bool passed = false;
};

/// Closed form of `problem` on the grid nodes checked against the integral
/// equation and against the marching solver.
VerifyReport verify(const KineticProblem& problem, const QuadratureGrid& grid,
                    const SeriesControl& ctl = {});

}  // namespace fkin::cli
