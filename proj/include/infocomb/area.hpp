#pragma once

// Area-threshold quantity for the (d_l, d_r)-regular ensemble,
//   A(a) = -h - (d_l - 1 - d_l/d_r) H(a^{d_r}) + (d_l - 1) H(a^{d_r - 1}),
// with h = H(a), and the sufficient conditions for A(a) >= c0.

#include <vector>

#include "infocomb/channel.hpp"
#include "infocomb/polynomial.hpp"
#include "infocomb/series.hpp"

namespace infocomb {

class EnsembleParams {
 public:
  /// Throws DomainError unless d_l >= 2, d_r >= 3, d_l < d_r and kappa in (0, 1).
  EnsembleParams(int dl, int dr);

  int dl() const noexcept { return dl_; }
  int dr() const noexcept { return dr_; }
  double ratio() const noexcept { return double(dl_) / double(dr_); }
  double design_rate() const noexcept { return 1.0 - ratio(); }
  /// kappa = (d_l - 1 - d_l/d_r) / (d_l - 1).
  double kappa() const noexcept { return (double(dl_ - 1) - ratio()) / double(dl_ - 1); }
  /// rho_kappa = X^{d_r - 1} - kappa X^{d_r}.
  Polynomial area_polynomial() const;

 private:
  int dl_, dr_;
};

/// A(a) through the series. Throws DomainError when |H(a) - h| > 1e-6.
SeriesValue area_quantity(const Channel& a, const EnsembleParams& p, double h, double tol = 1e-13);
/// A(a) through explicit convolution powers (small supports only).
double area_quantity_explicit(const Channel& a, const EnsembleParams& p);

struct LemmaConditions {
  bool cond_i;   ///< (1 - 2 h2^{-1}(h))^2 <= (c0 / (d_l - 1))^{1 / (d_r - 1)}
  bool cond_ii;  ///< h <= d_l/d_r - 2 c0
  bool both() const noexcept { return cond_i && cond_ii; }
};

LemmaConditions neglem_conditions(const EnsembleParams& p, double h, double c0);

/// c0 = (d_l - 1) exp(-sqrt(d_r - 1)).
double asymptotic_margin(const EnsembleParams& p);

/// xi(h) = (d_l - 1) rho_kappa((1 - 2 h2^{-1}(h))^2).
double xi(const EnsembleParams& p, double h);

/// Lower bound on H(rho_kappa(a)) over channels of entropy h:
/// 1 - kappa - g^{d_r - 1} + kappa g^{d_r} with g = (1 - 2 h2^{-1}(h))^2.
double area_polynomial_lower_bound(const EnsembleParams& p, double h);

struct AreaInterval {
  double lower;  ///< L = h2(K / sqrt(d_r))
  double upper;  ///< R = d_l/d_r - 2 c0
  double c0;
  bool valid;    ///< L <= R and both conditions hold on the whole check grid
};

/// Finite-size instantiation of the asymptotic interval on which A >= 0.
/// Throws DomainError when K / sqrt(d_r) >= 1/2.
AreaInterval cclarea_interval(const EnsembleParams& p, double K, int grid_points = 200);

/// Condition under which BEC(h) is extremal for A at entropy h.
/// use_printed_form: (1 - 2 h2^{-1}(h))^2 <= (kappa - 2) / (d_r kappa), which
/// is never satisfiable for kappa < 1 unless the left side vanishes.
/// Otherwise the convexity form (d_r - 2) / (kappa d_r) derived from rho_kappa'' >= 0.
bool corollary_condition(const EnsembleParams& p, double h, bool use_printed_form);

}  // namespace infocomb
