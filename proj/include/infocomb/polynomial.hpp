#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infocomb {

/// Real polynomial rho(x) = c_1 x + ... + c_D x^D. The constant term is
/// structurally zero, so rho(0) = 0 always holds.
class Polynomial {
 public:
  /// `coeffs[i]` is the coefficient of x^(i+1). Trailing zeros are trimmed;
  /// throws DomainError if nothing nonzero remains or a value is not finite.
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int degree, double coeff = 1.0);

  int degree() const noexcept { return int(coeffs_.size()); }
  /// Coefficient of x^i; 0 for i = 0 or i > degree.
  double coeff(int i) const noexcept;
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  double operator()(double x) const { return derivative(x, 0); }
  /// k-th derivative at x (k = 0 evaluates rho itself).
  double derivative(double x, int k) const;

  /// sum_i |c_i|, the value of |rho| taken coefficient-wise at 1.
  double abs_sum() const noexcept;

  std::string to_string() const;

 private:
  std::vector<double> coeffs_;
};

/// Parses `c*x^k` terms joined by + or -, e.g. "x^5 - 0.75*x^6", "2x^2+x".
/// Constant terms are rejected. Throws ParseError.
Polynomial parse_polynomial(std::string_view text);

/// rho' >= -1e-12 on [0, x_max].
bool poly_increasing_on(const Polynomial& rho, double x_max);
/// rho'' >= -1e-12 on [0, x_max].
bool poly_convex_on(const Polynomial& rho, double x_max);

/// Minimum of rho^(k) over [0, x_max]. Candidates are the endpoints and the
/// roots of rho^(k+1), isolated by sign changes on a 4096-cell grid and
/// refined by bisection to 1e-12.
double min_derivative_on(const Polynomial& rho, int k, double x_max);

}  // namespace infocomb
