// infocomb: evaluate, convolve, sweep and optimize BMS channel functionals.
// Exit codes: 0 success, 1 a check was violated, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "infocomb/area.hpp"
#include "infocomb/channel.hpp"
#include "infocomb/convolution.hpp"
#include "infocomb/error.hpp"
#include "infocomb/functionals.hpp"
#include "infocomb/optimizer.hpp"
#include "infocomb/series.hpp"
#include "infocomb/suites.hpp"

using namespace infocomb;

namespace {

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write `" + path + "`");
  out << text;
}

std::pair<int, int> parse_ensemble(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    const int dl = std::stoi(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(s);
    const std::string rest = s.substr(comma + 1);
    const int dr = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {dl, dr};
  } catch (const std::logic_error&) {
    throw UsageError("--ensemble expects d_l,d_r, got `" + s + "`");
  }
}

void print_functionals(const Channel& a, std::ostream& os) {
  for (const Functional f : {Functional::E, Functional::H, Functional::B})
    os << to_string(f) << "=" << g12(evaluate(f, a)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information functionals of binary memoryless symmetric channels"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Print E, H and B of a channel");
  std::string eval_input, eval_functional;
  bool eval_all = false;
  eval->add_option("channel", eval_input, "bsc:<eps>, bec:<h> or a channel document")->required();
  auto* eval_f = eval->add_option("--functional", eval_functional, "E, H or B");
  eval->add_flag("--all", eval_all, "Print all three functionals")->excludes(eval_f);

  // convolve
  auto* conv = app.add_subcommand("convolve", "Check-convolve channels");
  std::vector<std::string> conv_inputs;
  int conv_power = 0;
  bool conv_summary = false, conv_series = false;
  std::string conv_out;
  conv->add_option("channels", conv_inputs, "Channels to combine")->required();
  conv->add_option("--power", conv_power, "Self-convolve the single input d times")->check(CLI::PositiveNumber);
  conv->add_flag("--summary", conv_summary, "Also print E, H, B of the result to stderr");
  conv->add_flag("--series", conv_series, "Print H and B of the power through the series instead");
  conv->add_option("--out", conv_out, "Output path (default stdout)");

  // suite
  auto* suite = app.add_subcommand("suite", "Run a seeded check sweep");
  std::string suite_name, suite_out, suite_functional, suite_rho, suite_ensemble;
  SuiteConfig cfg;
  int trials = 0, grid = 0;
  double tol = 0.0;
  suite->add_option("name", suite_name, "ineq, prop1, prop2, lemma1, area or claim")->required();
  suite->add_option("--seed", cfg.seed, "Run seed");
  auto* o_trials = suite->add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
  auto* o_tol = suite->add_option("--tol", tol, "Slack tolerance");
  suite->add_option("--out", suite_out, "CSV path (default stdout)");
  auto* o_fun = suite->add_option("--functional,--phi", suite_functional, "H or B");
  auto* o_rho = suite->add_option("--rho", suite_rho, "Polynomial, e.g. \"x^5 - 0.75*x^6\"");
  auto* o_ens = suite->add_option("--ensemble", suite_ensemble, "d_l,d_r");
  auto* o_grid = suite->add_option("--grid", grid, "Grid resolution")->check(CLI::PositiveNumber);
  suite->add_option("--k-const", cfg.k_const, "Interval constant K")->check(CLI::PositiveNumber);
  suite->add_flag("--paper-form", cfg.paper_form, "Evaluate the corollary condition as printed");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Series coefficients with partial sums and tail bounds");
  std::string coeff_tag;
  std::size_t coeff_n = 0;
  coeffs->add_option("functional", coeff_tag, "H or B")->required();
  coeffs->add_option("N", coeff_n, "Number of terms")->required()->check(CLI::Range(std::size_t(1), kMaxSeriesTerms));

  // optimize
  auto* opt = app.add_subcommand("optimize", "Coordinate search on the area objective at fixed entropy");
  std::string opt_ensemble = "3,6", opt_out;
  double opt_h = 0.45;
  bool opt_max = false;
  std::uint64_t opt_seed = 42;
  OptimizerOptions opt_opts;
  opt->add_option("--ensemble", opt_ensemble, "d_l,d_r");
  opt->add_option("--entropy", opt_h, "Entropy constraint")->check(CLI::Range(0.0, 1.0));
  opt->add_flag("--maximize", opt_max, "Maximize instead of minimize");
  opt->add_option("--seed", opt_seed, "Run seed");
  opt->add_option("--grid", opt_opts.grid, "Grid points on [0, 1/2]")->check(CLI::Range(64, 1 << 16));
  opt->add_option("--max-sweeps", opt_opts.max_sweeps)->check(CLI::PositiveNumber);
  opt->add_option("--out", opt_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) {
      const Channel a = load_channel_spec(eval_input);
      if (!eval_functional.empty()) {
        const Functional f = parse_functional(eval_functional);
        std::cout << to_string(f) << "=" << g12(evaluate(f, a)) << "\n";
      } else {
        print_functionals(a, std::cout);
      }
      return 0;
    }

    if (*conv) {
      std::vector<Channel> chans;
      for (const auto& s : conv_inputs) chans.push_back(load_channel_spec(s));
      if (conv_power > 0 && chans.size() != 1) throw UsageError("--power takes exactly one channel");
      if (conv_series) {
        if (conv_power == 0) throw UsageError("--series needs --power");
        std::string text;
        for (const Functional f : {Functional::H, Functional::B}) {
          const auto v = phi_series(f, chans[0], conv_power, 1e-12);
          text += std::string(to_string(f)) + "=" + g12(v.value) + " error_bound=" + g12(v.error_bound) + "\n";
        }
        emit(text, conv_out);
        return 0;
      }
      Channel result = chans[0];
      try {
        if (conv_power > 0) {
          result = check_power(chans[0], conv_power);
        } else {
          for (std::size_t i = 1; i < chans.size(); ++i) result = check_convolve(result, chans[i]);
        }
      } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\nhint: rerun with --series to evaluate H and B without the support\n";
        return 2;
      }
      emit(serialize_channel(result), conv_out);
      if (conv_summary) print_functionals(result, std::cerr);
      return 0;
    }

    if (*suite) {
      if (*o_trials) cfg.trials = trials;
      if (*o_tol) cfg.tol = tol;
      if (*o_grid) cfg.grid = grid;
      if (*o_fun) cfg.functional = parse_functional(suite_functional);
      if (*o_rho) cfg.rho = parse_polynomial(suite_rho);
      if (*o_ens) cfg.ensemble = parse_ensemble(suite_ensemble);
      const SuiteResult r = run_suite(suite_name, cfg);
      emit(r.csv, suite_out);
      std::cerr << r.summary() << "\n";
      for (const auto& n : r.notes) std::cerr << n << "\n";
      return r.exit_code();
    }

    if (*coeffs) {
      const Functional f = parse_functional(coeff_tag);
      if (f == Functional::E) throw UsageError("coefficients exist for H and B only");
      std::string text = "n,a,partial_sum,tail_bound\n";
      const auto a = coefficients(f, coeff_n);
      double partial = 0.0;
      for (std::size_t n = 1; n <= coeff_n; ++n) {
        partial += a[n - 1];
        text += std::to_string(n) + "," + g17(a[n - 1]) + "," + g17(partial) + "," + g17(coefficient_tail(f, n)) + "\n";
      }
      std::cout << text;
      return 0;
    }

    if (*opt) {
      const auto [dl, dr] = parse_ensemble(opt_ensemble);
      const EnsembleParams p(dl, dr);
      const auto spec = ObjectiveSpec::area(p, opt_h, opt_max ? Sense::Maximize : Sense::Minimize);
      const auto res = coordinate_descent(spec, {Functional::H, opt_h}, opt_seed, opt_opts);
      emit(run_log_csv(res, opt_seed), opt_out);
      std::cerr << "verdict " << to_string(res.verdict) << " objective " << g12(res.state.objective) << " sweeps "
                << res.state.sweeps << (res.converged ? "" : " (not converged)") << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
