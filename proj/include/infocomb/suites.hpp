#pragma once

// Seeded sweeps over the bounds, the area lemma and the optimizer claim.
// Each suite produces a CSV document plus counters; rows are emitted in
// trial order, so the CSV depends only on the configuration.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infocomb/functionals.hpp"
#include "infocomb/polynomial.hpp"

namespace infocomb {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::optional<int> trials;     ///< per cell; suite-specific default
  std::optional<double> tol;     ///< slack tolerance; suite-specific default
  std::optional<Functional> functional;
  std::optional<Polynomial> rho;
  std::optional<std::pair<int, int>> ensemble;
  std::optional<int> grid;       ///< h grid for `area`, eps grid for `claim`
  double k_const = 1.0;
  bool paper_form = false;
};

struct SuiteResult {
  std::string name;
  std::string csv;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  double min_slack;  ///< over hypothesis-satisfied cases
  /// Extra human-readable lines: counterexamples, verdict tables, flags.
  std::vector<std::string> notes;

  SuiteResult();
  std::string summary() const;
  int exit_code() const { return violations == 0 ? 0 : 1; }
};

std::span<const std::string_view> suite_names();

/// Throws UsageError for an unknown suite name or an inapplicable option.
SuiteResult run_suite(std::string_view name, const SuiteConfig& config);

SuiteResult run_ineq_suite(const SuiteConfig& config);
SuiteResult run_prop1_suite(const SuiteConfig& config);
SuiteResult run_lemma1_suite(const SuiteConfig& config);
SuiteResult run_prop2_suite(const SuiteConfig& config);
SuiteResult run_area_suite(const SuiteConfig& config);
SuiteResult run_claim_suite(const SuiteConfig& config);

/// X^2, X^3, X^6 and X^5 - 0.75 X^6.
std::vector<Polynomial> default_test_polynomials();

}  // namespace infocomb
