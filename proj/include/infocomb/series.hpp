#pragma once

// Power-series machinery for the H and B functionals:
//   f_Phi(x) = 1 - sum_{n>=1} a_{Phi,n} x^{2n},   sum_n a_{Phi,n} = 1,
//   1 - Phi(a^{[check] i}) = sum_n a_{Phi,n} gamma_{a,n}^i,
//   Phi(rho(a)) = rho(1) - sum_n a_{Phi,n} rho(gamma_{a,n}),
// where gamma_{a,n} = sum_j w_j (1 - 2 eps_j)^{2n} are the channel moments.

#include <cstddef>
#include <span>
#include <vector>

#include "infocomb/channel.hpp"
#include "infocomb/functionals.hpp"
#include "infocomb/polynomial.hpp"

namespace infocomb {

/// Hard cap on the number of series terms summed explicitly.
inline constexpr std::size_t kMaxSeriesTerms = 100'000;

/// a_{H,n} = 1 / (2 ln2 n (2n - 1)),  a_{B,n} = C(2n, n) / ((2n - 1) 4^n).
/// Throws DomainError for n < 1 or Functional::E.
double coefficient(Functional tag, std::size_t n);

/// a_{tag,1..count} from a cached table (count <= kMaxSeriesTerms + 1).
std::span<const double> coefficients(Functional tag, std::size_t count);

/// Rigorous upper bound on sum_{n>N} a_{tag,n}.
///   H: a_{H,n} <= (1/(2 ln2)) / (2 n (n-1)) telescopes to 1 / (4 N ln2).
///   B: a_{B,n} = p_{n-1} - p_n with p_n = C(2n,n)/4^n, so the tail is p_N
///      exactly; the returned value is inflated by the recurrence rounding.
double coefficient_tail(Functional tag, std::size_t N);
/// Matching lower bound on the same tail (H: 1 / ((2N+1) 2 ln2)).
double coefficient_tail_lower(Functional tag, std::size_t N);
/// sum_{n<=N} a_{tag,n}, summed smallest term first.
double coefficient_partial_sum(Functional tag, std::size_t N);

/// gamma_{a,n} = sum_j w_j (1 - 2 eps_j)^{2n}. Throws DomainError for n < 1.
double moment(const Channel& a, std::size_t n);
/// gamma_{a,1..count}; non-increasing in n.
std::vector<double> moments(const Channel& a, std::size_t count);

/// A truncated series value and a rigorous bound on its truncation error.
struct SeriesValue {
  double value;
  double error_bound;
  std::size_t terms;  ///< explicit terms summed
};

/// Phi(rho(a)) = sum_i c_i Phi(a^{[check] i}) evaluated through the moment
/// series. Mass points whose moments decay too slowly for an explicit sum
/// (eps = 0 and eps close to 0) are summed in closed form through the
/// kernel, the remaining geometric part is truncated once
/// tail(N) * Lip(rho) * (fast moment at N+1) <= tol, with N <= kMaxSeriesTerms.
/// If the cap is reached the achieved bound is returned.
SeriesValue phi_of_poly(Functional tag, const Polynomial& rho, const Channel& a, double tol = 1e-12);

/// Phi(a^{[check] power}) through the series.
SeriesValue phi_series(Functional tag, const Channel& a, int power, double tol = 1e-12);

}  // namespace infocomb
