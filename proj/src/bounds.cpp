#include "infocomb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "infocomb/convolution.hpp"
#include "infocomb/error.hpp"
#include "infocomb/series.hpp"

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

void require_series_tag(Functional tag) {
  if (tag == Functional::E) throw UsageError("bound requires functional H or B");
}

constexpr double kExplicitSupportLimit = 20'000.0;
// Below this, 1 - Phi is recomputed from the moment series: the subtraction
// leaves an absolute error near 1e-16 that roots would blow up.
constexpr double kComplementSeriesBelow = 1e-2;

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string BoundReport::csv_header() { return "kind,params,lhs,rhs,slack,hypothesis_ok,seed"; }

std::string BoundReport::csv_row() const {
  return kind + "," + params + "," + fmt(lhs) + "," + fmt(rhs) + "," + fmt(slack) + "," +
         (hypothesis_ok ? "1" : "0") + "," + std::to_string(seed);
}

double complement_of_product(Functional tag, std::span<const Channel> factors, std::span<const int> powers) {
  require_series_tag(tag);
  if (factors.empty() || factors.size() != powers.size()) throw UsageError("complement_of_product: mismatched factors");
  for (int k : powers)
    if (k < 1) throw DomainError("complement_of_product: powers must be >= 1");

  double direct;
  if (factors.size() == 1) {
    direct = 1.0 - phi_power(tag, factors[0], powers[0]);
  } else {
    Channel c = check_power(factors[0], powers[0]);
    for (std::size_t j = 1; j < factors.size(); ++j) c = check_convolve(c, check_power(factors[j], powers[j]));
    direct = 1.0 - evaluate(tag, c);
  }
  if (direct >= kComplementSeriesBelow) return direct;

  // sum_n a_n prod_j gamma_{j,n}^{k_j}; the product is nonincreasing in n,
  // so tail(N) times its next value bounds the remainder.
  for (std::size_t N = 64;; N *= 2) {
    N = std::min(N, kMaxSeriesTerms);
    std::vector<double> g(N + 1, 1.0);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const auto m = moments(factors[j], N + 1);
      for (std::size_t n = 0; n <= N; ++n) g[n] *= std::pow(m[n], double(powers[j]));
    }
    const auto a = coefficients(tag, N);
    double sum = 0.0;
    for (std::size_t n = N; n-- > 0;) sum += a[n] * g[n];
    const double bound = coefficient_tail(tag, N) * g[N];
    if (bound <= 1e-16 * sum || bound <= 1e-300) return sum + 0.5 * bound;
    // Slow decay means some point sits near eps = 0; then the direct value
    // is not small relative to its rounding error after all.
    if (N == kMaxSeriesTerms) return direct;
  }
}

double phi_power(Functional tag, const Channel& a, int k) {
  if (k < 1) throw DomainError("phi_power: k must be >= 1");
  if (tag == Functional::E) return 0.5 * (1.0 - std::pow(1.0 - 2.0 * evaluate(tag, a), double(k)));
  if (k == 1) return evaluate(tag, a);
  if (projected_power_support(a, k) <= kExplicitSupportLimit) return evaluate(tag, check_power(a, k));
  return phi_series(tag, a, k, 1e-14).value;
}

ExtremalBound t1_upper_bound(Functional tag, const Polynomial& rho, double phi0) {
  require_series_tag(tag);
  if (!(phi0 >= 0.0 && phi0 <= 1.0)) throw DomainError("phi0 must lie in [0, 1]");
  const double range = std::pow(kernel_inv(tag, phi0), 2);
  return {rho(1.0) - rho(1.0 - phi0), bec(phi0), poly_convex_on(rho, range), range};
}

ExtremalBound l1_lower_bound(Functional tag, const Polynomial& rho, double phi0) {
  require_series_tag(tag);
  if (!(phi0 >= 0.0 && phi0 <= 1.0)) throw DomainError("phi0 must lie in [0, 1]");
  const double x = kernel_inv(tag, phi0);
  const double range = x * x;
  return {rho(1.0) - rho(range), bsc(0.5 * (1.0 - x)), poly_increasing_on(rho, range), range};
}

FixedErrorExtremes t2_extremes(Functional tag, const Polynomial& rho, double eps, double tol) {
  require_series_tag(tag);
  if (!(eps >= 0.0 && eps <= 0.5)) throw DomainError("eps must lie in [0, 1/2]");
  Channel lo = bec(2.0 * eps);
  Channel hi = bsc(eps);
  const double vlo = phi_of_poly(tag, rho, lo, tol).value;
  const double vhi = phi_of_poly(tag, rho, hi, tol).value;
  return {vlo, vhi, std::move(lo), std::move(hi), poly_increasing_on(rho, 1.0 - 2.0 * eps)};
}

BoundReport check_t1(Functional tag, const Polynomial& rho, const Channel& a, double tol) {
  const double phi0 = evaluate(tag, a);
  const auto bound = t1_upper_bound(tag, rho, phi0);
  BoundReport r;
  r.kind = "prop1";
  r.params = std::string("tag=") + std::string(to_string(tag)) + ";rho=" + rho.to_string() + ";phi0=" + short_fmt(phi0);
  r.lhs = phi_of_poly(tag, rho, a, tol).value;
  r.rhs = bound.value;
  r.slack = r.rhs - r.lhs;
  r.hypothesis_ok = bound.hypothesis_ok;
  r.witnesses = {a, bound.extremizer};
  return r;
}

BoundReport check_l1(Functional tag, const Polynomial& rho, const Channel& a, double tol) {
  const double phi0 = evaluate(tag, a);
  const auto bound = l1_lower_bound(tag, rho, phi0);
  BoundReport r;
  r.kind = "lemma1";
  r.params = std::string("tag=") + std::string(to_string(tag)) + ";rho=" + rho.to_string() + ";phi0=" + short_fmt(phi0);
  r.lhs = phi_of_poly(tag, rho, a, tol).value;
  r.rhs = bound.value;
  r.slack = r.lhs - r.rhs;
  r.hypothesis_ok = bound.hypothesis_ok;
  r.witnesses = {a};
  return r;
}

BoundReport check_t2(Functional tag, const Polynomial& rho, const Channel& a, double tol) {
  const double eps = evaluate(Functional::E, a);
  const auto ext = t2_extremes(tag, rho, eps, tol);
  const double v = phi_of_poly(tag, rho, a, tol).value;
  BoundReport r;
  r.kind = "prop2";
  r.params = std::string("tag=") + std::string(to_string(tag)) + ";rho=" + rho.to_string() + ";eps=" + short_fmt(eps);
  const double below = v - ext.min_value;
  const double above = ext.max_value - v;
  // Report the side that is closer to failing.
  if (below <= above) {
    r.lhs = v;
    r.rhs = ext.min_value;
    r.slack = below;
  } else {
    r.lhs = v;
    r.rhs = ext.max_value;
    r.slack = above;
  }
  r.hypothesis_ok = ext.hypothesis_ok;
  r.witnesses = {a, ext.minimizer, ext.maximizer};
  return r;
}

BoundReport check_bsc_minimizer_conjecture(Functional tag, const Polynomial& rho, const Channel& a, double tol) {
  require_series_tag(tag);
  const double phi0 = evaluate(tag, a);
  const Channel ref = bsc(0.5 * (1.0 - kernel_inv(tag, phi0)));
  BoundReport r;
  r.kind = "conjecture-bsc-min";
  r.params = std::string("tag=") + std::string(to_string(tag)) + ";rho=" + rho.to_string() + ";phi0=" + short_fmt(phi0);
  r.lhs = phi_of_poly(tag, rho, a, tol).value;
  r.rhs = phi_of_poly(tag, rho, ref, tol).value;
  r.slack = r.lhs - r.rhs;
  r.hypothesis_ok = false;
  r.witnesses = {a, ref};
  return r;
}

int inequality_arity(int id) {
  switch (id) {
    case 5: case 6: case 11: return 1;
    case 4: case 7: case 8: case 9: case 10: case 12: return 2;
  }
  throw UsageError("unknown inequality id " + std::to_string(id) + " (expected 4..12)");
}

bool inequality_uses_power(int id) { return id == 5 || id == 9 || id == 10; }
bool inequality_uses_alpha(int id) { return id == 9 || id == 10; }

BoundReport check_inequality(int id, std::span<const Channel> channels, Functional tag,
                             std::optional<double> alpha, std::optional<int> d) {
  require_series_tag(tag);
  const int arity = inequality_arity(id);
  if (int(channels.size()) != arity)
    throw UsageError("inequality " + std::to_string(id) + " takes " + std::to_string(arity) + " channel(s)");
  if (inequality_uses_power(id) && (!d || *d < 2))
    throw UsageError("inequality " + std::to_string(id) + " needs a power d >= 2");
  if (inequality_uses_alpha(id) && (!alpha || !(*alpha >= 0.0 && *alpha <= 1.0)))
    throw UsageError("inequality " + std::to_string(id) + " needs alpha in [0, 1]");

  const Channel& a = channels[0];
  const Channel& b = channels.size() > 1 ? channels[1] : channels[0];
  auto phi = [&](const Channel& c) { return evaluate(tag, c); };

  BoundReport r;
  r.kind = "ineq" + std::to_string(id);
  r.params = std::string("tag=") + std::string(to_string(tag));
  if (d) r.params += ";d=" + std::to_string(*d);
  if (alpha) r.params += ";alpha=" + short_fmt(*alpha);
  r.witnesses.assign(channels.begin(), channels.end());

  bool at_least = false;  // relation lhs >= rhs instead of lhs <= rhs
  // 1 - Phi of a^i * b^j, kept accurate near the useless channel.
  auto co = [&](int i, int j) {
    std::vector<Channel> f;
    std::vector<int> k;
    if (i > 0) f.push_back(a), k.push_back(i);
    if (j > 0) f.push_back(b), k.push_back(j);
    return complement_of_product(tag, f, k);
  };
  switch (id) {
    case 4:
      r.lhs = co(1, 1);
      r.rhs = co(1, 0) * co(0, 1);
      at_least = true;
      break;
    case 5: {
      r.lhs = phi_power(tag, a, *d);
      double bracket = double(*d);
      for (int k = 1; k < *d; ++k) bracket -= phi_power(tag, a, k);
      r.rhs = phi(a) * bracket;
      break;
    }
    case 6:
      r.lhs = co(1, 0);
      r.rhs = std::sqrt(co(2, 0));
      break;
    case 7:
      r.lhs = co(1, 1);
      r.rhs = std::sqrt(co(2, 0)) * std::sqrt(co(0, 2));
      break;
    case 8:
      r.lhs = co(1, 1);
      r.rhs = std::sqrt(co(2, 1)) * std::sqrt(co(0, 1));
      break;
    case 9: {
      const Channel m = mix(a, b, *alpha);
      r.lhs = phi_power(tag, m, *d);
      r.rhs = *alpha * phi_power(tag, a, *d) + (1.0 - *alpha) * phi_power(tag, b, *d);
      at_least = true;
      break;
    }
    case 10: {
      const Channel m = mix(a, b, *alpha);
      const double inv = 1.0 / double(*d);
      auto root = [&](const Channel& c) {
        const std::vector<Channel> f{c};
        const std::vector<int> k{*d};
        return std::pow(std::max(0.0, complement_of_product(tag, f, k)), inv);
      };
      r.lhs = root(m);
      r.rhs = *alpha * root(a) + (1.0 - *alpha) * root(b);
      break;
    }
    case 11:
      r.lhs = phi(a);
      r.rhs = kernel(tag, 1.0 - 2.0 * evaluate(Functional::E, a));
      break;
    case 12:
      r.lhs = co(1, 1);
      r.rhs = co(1, 0) * (1.0 - 2.0 * evaluate(Functional::E, b));
      break;
  }
  r.slack = at_least ? r.lhs - r.rhs : r.rhs - r.lhs;
  return r;
}

}  // namespace infocomb
