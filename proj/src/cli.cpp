#include "fkin/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "fkin/error.hpp"
#include "fkin/kgamma.hpp"

namespace fkin::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// key=value lines; '#' starts a comment; keys may use '_' or '-'.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

// Splices config-file options in front of the command-line ones so the later
// command-line occurrences win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
      from_file = read_config(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      from_file = read_config(a.substr(9));
    } else {
      rest.push_back(a);
    }
  }
  if (from_file.empty()) return rest;
  const auto insert_at = (!rest.empty() && rest.front().rfind("-", 0) != 0) ? 1 : 0;
  rest.insert(rest.begin() + insert_at, from_file.begin(), from_file.end());
  return rest;
}

Variant parse_variant(const std::string& name) {
  if (name == "thm1") return Variant::thm1;
  if (name == "thm2") return Variant::thm2;
  if (name == "thm3") return Variant::thm3;
  throw UsageError("unknown variant '" + name + "'");
}

ExponentReading parse_reading(const std::string& name) {
  return name == "printed" ? ExponentReading::printed : ExponentReading::consistent;
}

// Flags shared by the subcommands; defaults are all 1 with 50 series terms.
struct Flags {
  double x = 0.0;
  double p = 0.0;
  double nu = 1.0;
  double c = 1.0;
  double k = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double z = 0.0;
  double n0 = 1.0;
  double d = 1.0;
  double a = 1.0;
  double upsilon = 1.0;
  double l = 1.0;
  double t = 0.0;
  int max_terms = 50;
  double rel_tol = 1e-14;
  std::string reading = "consistent";
  std::string variant = "thm1";

  SeriesControl control() const { return {max_terms, rel_tol}; }
};

void add_series_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--max-terms", f.max_terms, "series truncation length")
      ->envname("FRAC_KINETICS_MAX_TERMS");
  sub->add_option("--rel-tol", f.rel_tol, "series early-exit tolerance");
  sub->add_option("--exponent-reading", f.reading, "thm2/thm3 exponent reading")
      ->check(CLI::IsMember({"consistent", "printed"}));
}

void add_problem_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--n0", f.n0, "initial density N0");
  sub->add_option("--d", f.d, "rate constant d");
  sub->add_option("--a", f.a, "rate constant a (thm3)");
  sub->add_option("--upsilon", f.upsilon, "fractional order");
  sub->add_option("--l", f.l, "k-Struve order l");
  sub->add_option("--c", f.c, "k-Struve parameter c");
  sub->add_option("--k", f.k, "k-Struve parameter k");
}

KineticProblem make_problem(const Flags& f, Variant variant, bool has_a) {
  KineticParams params;
  params.n0 = f.n0;
  params.upsilon = f.upsilon;
  params.d = f.d;
  if (has_a) params.a = f.a;
  params.variant = variant;
  params.struve = {f.l, f.c, f.k};
  params.reading = parse_reading(f.reading);
  return KineticProblem(params);
}

void require(const CLI::App* sub, std::initializer_list<const char*> names, const std::string& fn) {
  for (const char* name : names) {
    if (sub->count(name) == 0) throw UsageError(fn + " needs " + name);
  }
}

double evaluate(const std::string& fn, const Flags& f, const CLI::App* sub) {
  const auto ctl = f.control();
  if (fn == "gamma") {
    require(sub, {"--x"}, fn);
    return gamma(f.x);
  }
  if (fn == "kgamma") {
    require(sub, {"--x"}, fn);
    return k_gamma(f.x, PositiveReal(f.k));
  }
  if (fn == "struve") {
    require(sub, {"--p", "--x"}, fn);
    return struve_h(f.p, f.x, ctl);
  }
  if (fn == "kstruve") {
    require(sub, {"--x"}, fn);
    return k_struve({f.nu, f.c, f.k}, f.x, ctl);
  }
  if (fn == "ml") {
    require(sub, {"--alpha", "--z"}, fn);
    return mittag_leffler(f.alpha, f.z, ctl);
  }
  if (fn == "ml2") {
    require(sub, {"--alpha", "--beta", "--z"}, fn);
    return mittag_leffler2(f.alpha, f.beta, f.z, ctl);
  }
  require(sub, {"--t"}, fn);
  const Variant variant = parse_variant(fn);
  if (variant == Variant::thm3) require(sub, {"--a"}, fn);
  const auto problem = make_problem(f, variant, sub->count("--a") > 0);
  switch (variant) {
    case Variant::thm1:
      return solve_thm1(problem, f.t, ctl);
    case Variant::thm2:
      return solve_thm2(problem, f.t, ctl);
    case Variant::thm3:
      return solve_thm3(problem, f.t, ctl);
  }
  return 0.0;
}

bool nondecreasing(const std::vector<double>& n) {
  double scale = 0.0;
  for (double v : n) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 1; i < n.size(); ++i) {
    if (n[i] < n[i - 1] - 1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

std::string format_value(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = trim(text.substr(pos, comma - pos));
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw UsageError("cannot parse list item '" + item + "' in '" + std::string(text) + "'");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return values;
}

void SweepSpec::validate() const {
  if (k_values.empty()) throw UsageError("sweep needs at least one k value");
  if (upsilon_values.empty()) throw UsageError("sweep needs at least one upsilon value");
  if (!(t_min >= 0.0) || !(t_max > t_min)) {
    throw UsageError("sweep needs t_max > t_min >= 0, got t_min = " + format_number(t_min) +
                     ", t_max = " + format_number(t_max));
  }
  if (points < 2) throw UsageError("sweep needs points >= 2, got " + std::to_string(points));
  ctl.validate();
}

KineticProblem SweepSpec::problem(double k, double upsilon) const {
  KineticParams params;
  params.n0 = n0;
  params.upsilon = upsilon;
  params.d = d;
  params.a = a;
  params.variant = variant;
  params.struve = {l, c, k};
  params.reading = reading;
  return KineticProblem(params);
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> t(points);
  const double step = (t_max - t_min) / (points - 1);
  for (int i = 0; i < points; ++i) t[i] = i + 1 == points ? t_max : t_min + i * step;
  return t;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.t = spec.grid();
  for (double k : spec.k_values) {
    for (double upsilon : spec.upsilon_values) {
      SweepCell cell;
      cell.k = k;
      cell.upsilon = upsilon;
      cell.name = "N_k" + format_number(k) + "_v" + format_number(upsilon);
      try {
        cell.n = solve_table(spec.problem(k, upsilon), result.t, spec.ctl).n;
      } catch (const NumericError& e) {
        throw NumericError(e.kind(), "cell " + cell.name + ": " + e.what());
      }
      cell.nondecreasing = nondecreasing(cell.n);
      for (std::size_t i = 0; i < cell.n.size(); ++i) {
        if (result.t[i] > 0.0 && !(cell.n[i] > 0.0)) cell.positive = false;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string csv = "t";
  for (const auto& cell : result.cells) csv += "," + cell.name;
  csv += "\n";
  for (std::size_t i = 0; i < result.t.size(); ++i) {
    csv += format_value(result.t[i]);
    for (const auto& cell : result.cells) csv += "," + format_value(cell.n[i]);
    csv += "\n";
  }
  return csv;
}

VerifyReport verify(const KineticProblem& problem, const QuadratureGrid& grid, const SeriesControl& ctl) {
  VerifyReport report;
  const auto table = solve_table(problem, grid.nodes(), ctl);
  const auto march = volterra_solve(problem, problem.forcing(), grid, ctl);
  report.residual = residual(problem, table, grid, ctl);
  double gap = 0.0;
  for (std::size_t i = 0; i < table.n.size(); ++i) {
    report.max_abs_n = std::max(report.max_abs_n, std::abs(table.n[i]));
    gap = std::max(gap, std::abs(table.n[i] - march.n[i]));
  }
  const double scale = report.max_abs_n > 0.0 ? report.max_abs_n : 1.0;
  report.relative_defect = report.residual.max_defect / scale;
  report.relative_oracle_gap = gap / scale;
  report.passed = report.relative_defect <= kVerifyTolerance;
  return report;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional kinetic equations with k-Struve forcing", "fkin"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "fkin 1.0");

  Flags f;

  std::string function;
  auto* eval = app.add_subcommand("eval", "evaluate one function and print its value");
  eval->add_option("function", function, "gamma|kgamma|struve|kstruve|ml|ml2|thm1|thm2|thm3")
      ->required()
      ->check(CLI::IsMember({"gamma", "kgamma", "struve", "kstruve", "ml", "ml2", "thm1", "thm2", "thm3"}));
  eval->add_option("--x", f.x, "argument x");
  eval->add_option("--p", f.p, "Struve order p");
  eval->add_option("--nu", f.nu, "k-Struve order nu");
  eval->add_option("--alpha", f.alpha, "Mittag-Leffler alpha");
  eval->add_option("--beta", f.beta, "Mittag-Leffler beta");
  eval->add_option("--z", f.z, "Mittag-Leffler argument");
  eval->add_option("--t", f.t, "time");
  add_problem_flags(eval, f);
  add_series_flags(eval, f);

  std::string k_list = "1";
  std::string upsilon_list = "0.5,1,1.5,2";
  SweepSpec spec;
  auto* sweep = app.add_subcommand("sweep", "tabulate N(t) over a (k, upsilon) lattice into CSV");
  sweep->add_option("--variant", f.variant)->check(CLI::IsMember({"thm1", "thm2", "thm3"}));
  sweep->add_option("--k", k_list, "comma-separated k values");
  sweep->add_option("--upsilon", upsilon_list, "comma-separated orders");
  sweep->add_option("--n0", spec.n0);
  sweep->add_option("--d", spec.d);
  sweep->add_option("--a", f.a);
  sweep->add_option("--l", spec.l);
  sweep->add_option("--c", spec.c);
  sweep->add_option("--t-min", spec.t_min);
  sweep->add_option("--t-max", spec.t_max);
  sweep->add_option("--points", spec.points);
  sweep->add_option("--out", spec.output, "CSV output path")->required();
  add_series_flags(sweep, f);

  int grid_n = 4096;
  double verify_t_max = 1.0;
  auto* check = app.add_subcommand("verify", "check a closed form against the integral equation");
  check->add_option("--variant", f.variant)->check(CLI::IsMember({"thm1", "thm2", "thm3"}));
  check->add_option("--grid-n", grid_n, "quadrature subintervals (>= 8)");
  check->add_option("--t-max", verify_t_max, "horizon");
  add_problem_flags(check, f);
  add_series_flags(check, f);

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "fkin 1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*eval) {
      out << format_value(evaluate(function, f, eval)) << "\n";
      return kExitOk;
    }
    if (*sweep) {
      spec.variant = parse_variant(f.variant);
      spec.k_values = parse_list(k_list);
      spec.upsilon_values = parse_list(upsilon_list);
      if (sweep->count("--a") > 0) spec.a = f.a;
      spec.reading = parse_reading(f.reading);
      spec.ctl = f.control();
      const auto result = run_sweep(spec);
      std::ofstream file(spec.output, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + spec.output + "'");
      file << to_csv(result);
      file.close();
      if (!file) throw UsageError("failed writing '" + spec.output + "'");

      double lo = INFINITY;
      double hi = -INFINITY;
      for (const auto& cell : result.cells) {
        for (double v : cell.n) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      out << "rows=" << result.t.size() << " columns=" << result.cells.size() + 1
          << " min=" << format_value(lo) << " max=" << format_value(hi) << "\n";
      for (const auto& cell : result.cells) {
        if (!cell.nondecreasing) out << "flag: " << cell.name << " is not nondecreasing\n";
        if (!cell.positive) out << "flag: " << cell.name << " is not positive for t > 0\n";
      }
      return kExitOk;
    }
    if (*check) {
      const auto problem = make_problem(f, parse_variant(f.variant), check->count("--a") > 0);
      const auto ctl = f.control();
      const QuadratureGrid grid(grid_n, verify_t_max);
      const auto report = verify(problem, grid, ctl);
      out << "variant=" << f.variant << " reading=" << f.reading << " n=" << grid_n
          << " t_max=" << format_value(verify_t_max) << "\n";
      out << "max_defect=" << format_value(report.residual.max_defect)
          << " mean_defect=" << format_value(report.residual.mean_defect)
          << " argmax_t=" << format_value(report.residual.argmax_t) << "\n";
      out << "max_abs_N=" << format_value(report.max_abs_n)
          << " relative_defect=" << format_value(report.relative_defect)
          << " relative_oracle_gap=" << format_value(report.relative_oracle_gap) << "\n";
      out << "verdict=" << (report.passed ? "PASS" : "FAIL")
          << " tolerance=" << format_value(kVerifyTolerance) << "\n";
      return report.passed ? kExitOk : kExitVerdictFailed;
    }
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fkin::cli
