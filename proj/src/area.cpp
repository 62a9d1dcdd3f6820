#include "infocomb/area.hpp"

#include <cmath>
#include <string>

#include "infocomb/convolution.hpp"
#include "infocomb/error.hpp"
#include "infocomb/functionals.hpp"

namespace infocomb {

namespace {

double squared_bias(double h) {
  const double x = 1.0 - 2.0 * h2_inv(h);
  return x * x;
}

}  // namespace

EnsembleParams::EnsembleParams(int dl, int dr) : dl_(dl), dr_(dr) {
  if (dl < 2 || dr < 3 || dl >= dr)
    throw DomainError("ensemble needs d_l >= 2, d_r >= 3, d_l < d_r (got " + std::to_string(dl) + "," +
                      std::to_string(dr) + ")");
  const double k = kappa();
  if (!(k > 0.0 && k < 1.0)) throw DomainError("ensemble kappa outside (0, 1)");
}

Polynomial EnsembleParams::area_polynomial() const {
  std::vector<double> c(std::size_t(dr_), 0.0);
  c[std::size_t(dr_ - 2)] = 1.0;
  c[std::size_t(dr_ - 1)] = -kappa();
  return Polynomial(std::move(c));
}

SeriesValue area_quantity(const Channel& a, const EnsembleParams& p, double h, double tol) {
  if (std::abs(evaluate(Functional::H, a) - h) > 1e-6)
    throw DomainError("area_quantity: channel entropy does not match h");
  const double top_coeff = double(p.dl() - 1) - p.ratio();
  const SeriesValue full = phi_series(Functional::H, a, p.dr(), tol);
  const SeriesValue reduced = phi_series(Functional::H, a, p.dr() - 1, tol);
  return {-h - top_coeff * full.value + double(p.dl() - 1) * reduced.value,
          top_coeff * full.error_bound + double(p.dl() - 1) * reduced.error_bound,
          std::max(full.terms, reduced.terms)};
}

double area_quantity_explicit(const Channel& a, const EnsembleParams& p) {
  const double h = evaluate(Functional::H, a);
  const Channel reduced = check_power(a, p.dr() - 1);
  const Channel full = check_convolve(reduced, a);
  return -h - (double(p.dl() - 1) - p.ratio()) * evaluate(Functional::H, full) +
         double(p.dl() - 1) * evaluate(Functional::H, reduced);
}

LemmaConditions neglem_conditions(const EnsembleParams& p, double h, double c0) {
  if (!(c0 > 0.0)) throw DomainError("c0 must be positive");
  const double limit = std::pow(c0 / double(p.dl() - 1), 1.0 / double(p.dr() - 1));
  return {squared_bias(h) <= limit, h <= p.ratio() - 2.0 * c0};
}

double asymptotic_margin(const EnsembleParams& p) {
  return double(p.dl() - 1) * std::exp(-std::sqrt(double(p.dr() - 1)));
}

double xi(const EnsembleParams& p, double h) {
  return double(p.dl() - 1) * p.area_polynomial()(squared_bias(h));
}

double area_polynomial_lower_bound(const EnsembleParams& p, double h) {
  const double g = squared_bias(h);
  return 1.0 - p.kappa() - std::pow(g, p.dr() - 1) + p.kappa() * std::pow(g, p.dr());
}

AreaInterval cclarea_interval(const EnsembleParams& p, double K, int grid_points) {
  const double arg = K / std::sqrt(double(p.dr()));
  if (!(arg > 0.0 && arg < 0.5)) throw DomainError("K / sqrt(d_r) must lie in (0, 1/2)");
  AreaInterval out;
  out.c0 = asymptotic_margin(p);
  out.lower = h2(arg);
  out.upper = p.ratio() - 2.0 * out.c0;
  out.valid = out.lower <= out.upper;
  for (int i = 0; out.valid && i < grid_points; ++i) {
    const double h = grid_points == 1 ? out.lower
                                      : out.lower + (out.upper - out.lower) * double(i) / double(grid_points - 1);
    out.valid = neglem_conditions(p, h, out.c0).both();
  }
  return out;
}

bool corollary_condition(const EnsembleParams& p, double h, bool use_printed_form) {
  const double k = p.kappa();
  const double d = double(p.dr());
  const double limit = use_printed_form ? (k - 2.0) / (d * k) : (d - 2.0) / (k * d);
  return squared_bias(h) <= limit;
}

}  // namespace infocomb
