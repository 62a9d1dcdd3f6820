#pragma once

// Extremal bounds for Phi(rho(a)) under a single functional constraint and
// numerical checkers for the combining inequalities between H/B values of
// check-convolved channels.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infocomb/channel.hpp"
#include "infocomb/functionals.hpp"
#include "infocomb/polynomial.hpp"

namespace infocomb {

enum class Verdict { Holds, Violated, Inconclusive };

std::string_view to_string(Verdict v);

/// Outcome of evaluating one bound or inequality on concrete channels.
/// `slack` is oriented so that slack >= 0 means the statement holds. A
/// report whose hypothesis does not hold is never counted as a violation.
struct BoundReport {
  std::string kind;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool hypothesis_ok = true;
  std::vector<Channel> witnesses;
  std::uint64_t seed = 0;

  Verdict verdict(double tolerance) const {
    if (!hypothesis_ok) return Verdict::Inconclusive;
    return slack >= -tolerance ? Verdict::Holds : Verdict::Violated;
  }

  static std::string csv_header();
  /// kind,params,lhs,rhs,slack,hypothesis_ok,seed with 17 significant digits.
  std::string csv_row() const;
};

/// A bound value with the channel that attains it (when it is attained).
struct ExtremalBound {
  double value;
  Channel extremizer;
  bool hypothesis_ok;
  double hypothesis_range;  ///< right end of the interval the hypothesis is checked on
};

/// max Phi(rho(a)) s.t. Phi(a) = phi0 is rho(1) - rho(1 - phi0), attained by
/// BEC(phi0), provided rho is convex on [0, kernel_inv(tag, phi0)^2].
ExtremalBound t1_upper_bound(Functional tag, const Polynomial& rho, double phi0);

/// Phi(rho(a)) >= rho(1) - rho(kernel_inv(tag, phi0)^2) for every a with
/// Phi(a) = phi0, provided rho is increasing on that range. The extremizer
/// field holds the BSC with Phi = phi0 (the maximizer of the first moment).
ExtremalBound l1_lower_bound(Functional tag, const Polynomial& rho, double phi0);

struct FixedErrorExtremes {
  double min_value;  ///< attained by BEC(2 eps)
  double max_value;  ///< attained by BSC(eps)
  Channel minimizer;
  Channel maximizer;
  bool hypothesis_ok;  ///< rho increasing on [0, 1 - 2 eps]
};

/// Extremes of Phi(rho(a)) over channels with E(a) = eps.
FixedErrorExtremes t2_extremes(Functional tag, const Polynomial& rho, double eps, double tol = 1e-13);

/// Checks the upper bound of t1_upper_bound on channel `a` (Phi(a) must equal phi0).
BoundReport check_t1(Functional tag, const Polynomial& rho, const Channel& a, double tol = 1e-13);
/// Checks the lower bound of l1_lower_bound on channel `a`.
BoundReport check_l1(Functional tag, const Polynomial& rho, const Channel& a, double tol = 1e-13);
/// Checks min <= Phi(rho(a)) <= max for the E-constrained extremes; slack is
/// the smaller of the two margins.
BoundReport check_t2(Functional tag, const Polynomial& rho, const Channel& a, double tol = 1e-13);

/// Conjecture: among channels with Phi(a) = phi0 the BSC minimizes
/// Phi(rho(a)). Returned reports are informational and always carry
/// hypothesis_ok = false so they never register as violations; a negative
/// slack is a counterexample.
BoundReport check_bsc_minimizer_conjecture(Functional tag, const Polynomial& rho, const Channel& a,
                                           double tol = 1e-13);

/// Number of channels inequality `id` (4..12) takes.
int inequality_arity(int id);
/// Whether inequality `id` uses the power d / the mixing weight alpha.
bool inequality_uses_power(int id);
bool inequality_uses_alpha(int id);

/// Evaluates combining inequality `id` in 4..12 with tag in {H, B}:
///   4  1-Phi(a*b) >= (1-Phi(a))(1-Phi(b))
///   5  Phi(a^d) <= Phi(a)(d - Phi(a) - Phi(a^2) - ... - Phi(a^(d-1)))
///   6  1-Phi(a) <= sqrt(1-Phi(a*a))
///   7  1-Phi(a*b) <= sqrt(1-Phi(a*a)) sqrt(1-Phi(b*b))
///   8  1-Phi(a*b) <= sqrt(1-Phi(a*a*b)) sqrt(1-Phi(b))
///   9  Phi((alpha a + beta b)^d) >= alpha Phi(a^d) + beta Phi(b^d)
///   10 (1-Phi((alpha a + beta b)^d))^(1/d) <= alpha (1-Phi(a^d))^(1/d) + beta (1-Phi(b^d))^(1/d)
///   11 Phi(a) <= f_Phi(1 - 2E(a))
///   12 1-Phi(a*b) <= (1-Phi(a))(1-2E(b))
/// where * is the check convolution and beta = 1 - alpha. Throws UsageError
/// on a wrong channel count, a missing d or alpha, d < 2 or an unknown id.
BoundReport check_inequality(int id, std::span<const Channel> channels, Functional tag,
                             std::optional<double> alpha = std::nullopt, std::optional<int> d = std::nullopt);

/// 1 - Phi of the check convolution of factors[j]^powers[j]. Values below
/// 1e-2 come from the moment series, which keeps their relative precision.
double complement_of_product(Functional tag, std::span<const Channel> factors, std::span<const int> powers);

/// Phi(a^{[check] k}): explicit convolution when the projected support is
/// small, otherwise the series.
double phi_power(Functional tag, const Channel& a, int k);

}  // namespace infocomb
