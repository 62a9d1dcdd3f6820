#include "infocomb/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "infocomb/area.hpp"
#include "infocomb/bounds.hpp"
#include "infocomb/error.hpp"
#include "infocomb/optimizer.hpp"
#include "infocomb/sampling.hpp"

namespace infocomb {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<Functional> tags_of(const SuiteConfig& c) {
  if (!c.functional) return {Functional::H, Functional::B};
  if (*c.functional == Functional::E) throw UsageError("this suite needs --functional H or B");
  return {*c.functional};
}

std::vector<Polynomial> polys_of(const SuiteConfig& c) {
  return c.rho ? std::vector<Polynomial>{*c.rho} : default_test_polynomials();
}

void tally(SuiteResult& r, const BoundReport& rep, double tol) {
  ++r.trials;
  switch (rep.verdict(tol)) {
    case Verdict::Inconclusive: ++r.inconclusive; return;
    case Verdict::Violated:
      ++r.violations;
      if (r.notes.size() < 20) r.notes.push_back("violation: " + rep.kind + " " + rep.params + " slack=" + fmt(rep.slack));
      break;
    case Verdict::Holds: break;
  }
  r.min_slack = std::min(r.min_slack, rep.slack);
}

// Stream identifiers keep the trial generators of different cells apart.
std::uint64_t cell_stream(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return (a << 40) ^ (b << 20) ^ c; }

// Shared driver for the fixed-functional bound sweeps; fix_error constrains E
// instead of the tested functional.
template <class Check>
SuiteResult bound_sweep(std::string name, const SuiteConfig& cfg, bool fix_error,
                        std::span<const double> levels, Check check) {
  SuiteResult r;
  r.name = std::move(name);
  const int trials = cfg.trials.value_or(500);
  const double tol = cfg.tol.value_or(1e-9);
  const auto polys = polys_of(cfg);
  const auto tags = tags_of(cfg);
  r.csv = BoundReport::csv_header() + "\n";
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    for (const Functional tag : tags) {
      std::size_t cell_ok = 0, cell_total = 0;
      for (std::size_t li = 0; li < levels.size(); ++li) {
        const Functional ctag = fix_error ? Functional::E : tag;
        for (int t = 0; t < trials; ++t) {
          const std::uint64_t s = trial_seed(cfg.seed, cell_stream(pi, std::size_t(tag), li), std::uint64_t(t));
          Rng rng(s);
          const Channel a = random_channel_with(ctag, levels[li], rng);
          BoundReport rep = check(tag, polys[pi], a);
          rep.seed = s;
          tally(r, rep, tol);
          cell_ok += rep.hypothesis_ok;
          ++cell_total;
          r.csv += rep.csv_row() + "\n";
        }
      }
      char line[160];
      std::snprintf(line, sizeof line, "hypothesis satisfied: tag=%s rho=%s %zu/%zu", std::string(to_string(tag)).c_str(),
                    polys[pi].to_string().c_str(), cell_ok, cell_total);
      r.notes.emplace_back(line);
    }
  }
  return r;
}

constexpr std::array<double, 9> kPhiLevels{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
constexpr std::array<double, 9> kErrorLevels{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};

}  // namespace

SuiteResult::SuiteResult() : min_slack(std::numeric_limits<double>::infinity()) {}

std::string SuiteResult::summary() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "suite %s: trials=%zu violations=%zu inconclusive=%zu min_slack=%s", name.c_str(),
                trials, violations, inconclusive, std::isfinite(min_slack) ? fmt(min_slack).c_str() : "n/a");
  return buf;
}

std::span<const std::string_view> suite_names() {
  static constexpr std::array<std::string_view, 6> names{"ineq", "prop1", "prop2", "lemma1", "area", "claim"};
  return names;
}

std::vector<Polynomial> default_test_polynomials() {
  return {Polynomial::monomial(2), Polynomial::monomial(3), Polynomial::monomial(6),
          Polynomial({0, 0, 0, 0, 1.0, -0.75})};
}

SuiteResult run_ineq_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "ineq";
  const int trials = cfg.trials.value_or(10000);
  const double tol = cfg.tol.value_or(1e-12);
  r.csv = BoundReport::csv_header() + "\n";
  for (int id = 4; id <= 12; ++id) {
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t s = trial_seed(cfg.seed, std::uint64_t(id), std::uint64_t(t));
      Rng rng(s);
      const Functional tag = cfg.functional.value_or(t % 2 == 0 ? Functional::H : Functional::B);
      if (tag == Functional::E) throw UsageError("ineq needs --functional H or B");
      std::vector<Channel> chans;
      for (int k = 0; k < inequality_arity(id); ++k) chans.push_back(random_channel(rng));
      std::optional<double> alpha;
      std::optional<int> d;
      if (inequality_uses_alpha(id)) alpha = rng.uniform();
      if (inequality_uses_power(id)) d = rng.integer(2, 6);
      BoundReport rep = check_inequality(id, chans, tag, alpha, d);
      rep.seed = s;
      tally(r, rep, tol);
      r.csv += rep.csv_row() + "\n";
    }
  }
  // Equality case of the product bound: one factor from the erasure family.
  double worst = 0.0;
  const int eq_trials = std::max(1, trials / 10);
  for (int t = 0; t < eq_trials; ++t) {
    const std::uint64_t s = trial_seed(cfg.seed, 400, std::uint64_t(t));
    Rng rng(s);
    const Functional tag = cfg.functional.value_or(t % 2 == 0 ? Functional::H : Functional::B);
    const std::vector<Channel> chans{bec(rng.uniform()), random_channel(rng)};
    BoundReport rep = check_inequality(4, chans, tag);
    rep.kind = "ineq4_equality";
    rep.seed = s;
    worst = std::max(worst, std::abs(rep.slack));
    ++r.trials;
    if (std::abs(rep.slack) > 1e-9) {
      ++r.violations;
      if (r.notes.size() < 20) r.notes.push_back("equality case off: " + rep.params + " slack=" + fmt(rep.slack));
    }
    r.csv += rep.csv_row() + "\n";
  }
  r.notes.push_back("product bound with an erasure factor: max |slack| = " + short_fmt(worst));
  return r;
}

SuiteResult run_prop1_suite(const SuiteConfig& cfg) {
  SuiteResult r = bound_sweep("prop1", cfg, false, kPhiLevels,
                              [](Functional tag, const Polynomial& rho, const Channel& a) { return check_t1(tag, rho, a); });
  // The minimizer conjecture is reported, never counted.
  std::size_t checked = 0, against = 0;
  const auto polys = polys_of(cfg);
  for (std::size_t pi = 0; pi < polys.size(); ++pi)
    for (const Functional tag : tags_of(cfg))
      for (std::size_t li = 0; li < kPhiLevels.size(); ++li)
        for (int t = 0; t < cfg.trials.value_or(500); t += 10) {
          Rng rng(trial_seed(cfg.seed, cell_stream(pi, std::size_t(tag), li), std::uint64_t(t)));
          const Channel a = random_channel_with(tag, kPhiLevels[li], rng);
          const auto rep = check_bsc_minimizer_conjecture(tag, polys[pi], a);
          ++checked;
          if (rep.slack < -1e-9) {
            ++against;
            if (against <= 5) r.notes.push_back("BSC-minimizer counterexample: " + rep.params + " slack=" + fmt(rep.slack));
          }
        }
  r.notes.push_back("BSC-minimizer conjecture: " + std::to_string(against) + " counterexamples in " +
                    std::to_string(checked) + " checks");
  return r;
}

SuiteResult run_lemma1_suite(const SuiteConfig& cfg) {
  return bound_sweep("lemma1", cfg, false, kPhiLevels,
                     [](Functional tag, const Polynomial& rho, const Channel& a) { return check_l1(tag, rho, a); });
}

SuiteResult run_prop2_suite(const SuiteConfig& cfg) {
  return bound_sweep("prop2", cfg, true, kErrorLevels,
                     [](Functional tag, const Polynomial& rho, const Channel& a) { return check_t2(tag, rho, a); });
}

SuiteResult run_area_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "area";
  const auto [dl, dr] = cfg.ensemble.value_or(std::pair{100, 200});
  const EnsembleParams p(dl, dr);
  const int trials = cfg.trials.value_or(200);
  const int grid = cfg.grid.value_or(50);
  const double tol = cfg.tol.value_or(1e-9);
  if (grid < 1) throw UsageError("area grid must be positive");
  const double c0 = asymptotic_margin(p);
  r.csv = "d_l,d_r,h,c0,cond_i,cond_ii,min_observed_area,bound,margin\n";
  std::size_t certified = 0;
  for (int k = 1; k <= grid; ++k) {
    const double h = double(k) / double(grid + 1);
    const auto cond = neglem_conditions(p, h, c0);
    double lowest = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
      Rng rng(trial_seed(cfg.seed, std::uint64_t(k), std::uint64_t(t)));
      const Channel a = random_channel_with(Functional::H, h, rng);
      lowest = std::min(lowest, area_quantity(a, p, h).value);
    }
    const double margin = lowest - c0;
    r.csv += std::to_string(dl) + "," + std::to_string(dr) + "," + fmt(h) + "," + fmt(c0) + "," +
             (cond.cond_i ? "1" : "0") + "," + (cond.cond_ii ? "1" : "0") + "," + fmt(lowest) + "," + fmt(c0) + "," +
             fmt(margin) + "\n";
    r.trials += std::size_t(trials);
    if (!cond.both()) {
      r.inconclusive += std::size_t(trials);
      continue;
    }
    ++certified;
    r.min_slack = std::min(r.min_slack, margin);
    if (margin < -tol) {
      ++r.violations;
      r.notes.push_back("area below c0 at h=" + fmt(h) + ": margin " + fmt(margin));
    }
  }
  r.notes.push_back("grid points with both conditions: " + std::to_string(certified) + "/" + std::to_string(grid));
  if (dr >= 5 && cfg.k_const / std::sqrt(double(dr)) < 0.5) {
    const auto iv = cclarea_interval(p, cfg.k_const);
    r.notes.push_back("interval L=" + short_fmt(iv.lower) + " R=" + short_fmt(iv.upper) +
                      " valid=" + (iv.valid ? "1" : "0") + " (K=" + short_fmt(cfg.k_const) + ")");
  }
  std::size_t bec_ok = 0;
  for (int k = 1; k <= grid; ++k) bec_ok += corollary_condition(p, double(k) / double(grid + 1), cfg.paper_form);
  r.notes.push_back(std::string("corollary condition (") + (cfg.paper_form ? "printed" : "convexity") +
                    " form) holds on " + std::to_string(bec_ok) + "/" + std::to_string(grid) + " grid points");
  return r;
}

SuiteResult run_claim_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.name = "claim";
  std::vector<std::pair<int, int>> ensembles{{3, 6}, {5, 10}};
  if (cfg.ensemble) ensembles = {*cfg.ensemble};
  const int seeds = cfg.trials.value_or(20);
  OptimizerOptions opts;
  if (cfg.grid) opts.grid = *cfg.grid;
  if (opts.grid < 64) throw UsageError("claim needs --grid >= 64");
  r.csv = "d_l,d_r,h,sense,seed,verdict,objective,sweeps,converged,monotone\n";
  r.notes.push_back("d_l,d_r,h,sense,expected,hits,seeds,monotone");
  for (const auto& [dl, dr] : ensembles) {
    const EnsembleParams p(dl, dr);
    for (int k = 1; k <= 9; ++k) {
      const double h = double(k) / 10.0;
      for (const Sense sense : {Sense::Minimize, Sense::Maximize}) {
        const ShapeVerdict expected = sense == Sense::Minimize ? ShapeVerdict::AllEqualBsc : ShapeVerdict::AllEqualBec;
        const auto spec = ObjectiveSpec::area(p, h, sense);
        int hits = 0, monotone = 0;
        for (int s = 0; s < seeds; ++s) {
          const std::uint64_t seed = trial_seed(cfg.seed, cell_stream(std::uint64_t(dl), std::uint64_t(dr), std::uint64_t(k)),
                                                std::uint64_t(s));
          const auto res = coordinate_descent(spec, {Functional::H, h}, seed, opts);
          hits += res.verdict == expected;
          monotone += res.monotone();
          r.csv += std::to_string(dl) + "," + std::to_string(dr) + "," + fmt(h) + "," +
                   (sense == Sense::Minimize ? "min" : "max") + "," + std::to_string(seed) + "," +
                   std::string(to_string(res.verdict)) + "," + fmt(res.state.objective) + "," +
                   std::to_string(res.state.sweeps) + "," + (res.converged ? "1" : "0") + "," +
                   (res.monotone() ? "1" : "0") + "\n";
        }
        ++r.trials;
        const bool pass = 10 * hits >= 9 * seeds && monotone == seeds;
        r.violations += !pass;
        r.notes.push_back(std::to_string(dl) + "," + std::to_string(dr) + "," + short_fmt(h) + "," +
                          (sense == Sense::Minimize ? "min" : "max") + "," + std::string(to_string(expected)) + "," +
                          std::to_string(hits) + "," + std::to_string(seeds) + "," + std::to_string(monotone) +
                          (pass ? "" : ",FAIL"));
      }
    }
  }
  return r;
}

SuiteResult run_suite(std::string_view name, const SuiteConfig& config) {
  if (name == "ineq") return run_ineq_suite(config);
  if (name == "prop1") return run_prop1_suite(config);
  if (name == "lemma1") return run_lemma1_suite(config);
  if (name == "prop2") return run_prop2_suite(config);
  if (name == "area") return run_area_suite(config);
  if (name == "claim") return run_claim_suite(config);
  throw UsageError("unknown suite `" + std::string(name) + "` (ineq, prop1, prop2, lemma1, area, claim)");
}

}  // namespace infocomb
