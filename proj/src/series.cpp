#include "infocomb/series.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "infocomb/error.hpp"
#include "infocomb/kernels.hpp"

namespace infocomb {

namespace {

void require_series_tag(Functional tag) {
  if (tag == Functional::E) throw DomainError("functional E has no series expansion");
}

struct CoefficientTable {
  std::vector<double> a;  // a[n-1] = a_n
  std::vector<double> p;  // B only: p[n] = C(2n, n) / 4^n
};

const CoefficientTable& table(Functional tag) {
  auto build = [](Functional t) {
    CoefficientTable tb;
    const std::size_t size = kMaxSeriesTerms + 2;
    tb.a.resize(size);
    if (t == Functional::H) {
      for (std::size_t n = 1; n <= size; ++n)
        tb.a[n - 1] = 1.0 / (2.0 * std::numbers::ln2 * double(n) * double(2 * n - 1));
    } else {
      // a_{n+1} = a_n (2n - 1) / (2n + 2), a_1 = 1/2.
      tb.a[0] = 0.5;
      for (std::size_t n = 1; n < size; ++n) tb.a[n] = tb.a[n - 1] * double(2 * n - 1) / double(2 * n + 2);
      tb.p.resize(size + 1);
      tb.p[0] = 1.0;
      for (std::size_t n = 1; n <= size; ++n) tb.p[n] = tb.p[n - 1] * double(2 * n - 1) / double(2 * n);
    }
    return tb;
  };
  static const CoefficientTable h = build(Functional::H);
  static const CoefficientTable b = build(Functional::B);
  return tag == Functional::H ? h : b;
}

double central_ratio(std::size_t N) {
  const auto& p = table(Functional::B).p;
  if (N < p.size()) return p[N];
  double v = p.back();
  for (std::size_t n = p.size(); n <= N; ++n) v *= double(2 * n - 1) / double(2 * n);
  return v;
}

// 1 - f_Phi(x) = sum_n a_n x^{2n}, summed in closed form.
double series_complement(Functional tag, double x) { return 1.0 - kernel(tag, x); }

struct SeriesPoint {
  double x, y, w;
};

// sum_i c_i sum_n a_n sigma_n^i for the unnormalized slow measure, where
// sigma_n^i expands into products of slow points: each product x contributes
// its weight times 1 - f(x).
double slow_closed_form(Functional tag, const Polynomial& rho, std::span<const SeriesPoint> slow) {
  if (slow.empty()) return 0.0;
  struct Atom {
    double x, w;
  };
  std::vector<Atom> power{{1.0, 1.0}}, next;
  double total = 0.0;
  for (int i = 1; i <= rho.degree(); ++i) {
    next.clear();
    for (const auto& z : power)
      for (const auto& s : slow) next.push_back({z.x * s.x, z.w * s.w});
    std::sort(next.begin(), next.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
    power.clear();
    for (const auto& z : next) {
      if (!power.empty() && z.x - power.back().x <= 1e-15)
        power.back().w += z.w;
      else
        power.push_back(z);
    }
    if (const double c = rho.coeff(i); c != 0.0) {
      double s = 0.0;
      for (const auto& z : power) s += z.w * series_complement(tag, z.x);
      total += c * s;
    }
  }
  return total;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

constexpr std::size_t kSlowBudgetTerms = 8192;
constexpr double kSlowProductCap = 50'000.0;

}  // namespace

double coefficient(Functional tag, std::size_t n) {
  require_series_tag(tag);
  if (n < 1) throw DomainError("series coefficients start at n = 1");
  const auto& a = table(tag).a;
  if (n <= a.size()) return a[n - 1];
  if (tag == Functional::H) return 1.0 / (2.0 * std::numbers::ln2 * double(n) * double(2 * n - 1));
  double v = a.back();
  for (std::size_t k = a.size(); k < n; ++k) v *= double(2 * k - 1) / double(2 * k + 2);
  return v;
}

std::span<const double> coefficients(Functional tag, std::size_t count) {
  require_series_tag(tag);
  const auto& a = table(tag).a;
  if (count > a.size()) throw DomainError("coefficient table holds at most kMaxSeriesTerms + 2 terms");
  return std::span<const double>(a).first(count);
}

double coefficient_tail(Functional tag, std::size_t N) {
  require_series_tag(tag);
  if (N < 1) return 1.0;
  if (tag == Functional::H) return 1.0 / (4.0 * double(N) * std::numbers::ln2);
  return central_ratio(N) * (1.0 + 4.0 * double(N + 1) * DBL_EPSILON);
}

double coefficient_tail_lower(Functional tag, std::size_t N) {
  require_series_tag(tag);
  if (N < 1) return 1.0;
  if (tag == Functional::H) return 1.0 / (double(2 * N + 1) * 2.0 * std::numbers::ln2);
  return central_ratio(N) * (1.0 - 4.0 * double(N + 1) * DBL_EPSILON);
}

double coefficient_partial_sum(Functional tag, std::size_t N) {
  require_series_tag(tag);
  double s = 0.0;
  for (std::size_t n = N; n >= 1; --n) s += coefficient(tag, n);
  return s;
}

double moment(const Channel& a, std::size_t n) {
  if (n < 1) throw DomainError("moments start at n = 1");
  double g = 0.0;
  for (const auto& p : a.points()) g += p.weight * std::pow(1.0 - 2.0 * p.eps, double(2 * n));
  return g;
}

std::vector<double> moments(const Channel& a, std::size_t count) {
  std::vector<double> y, w, out(count);
  for (const auto& p : a.points()) {
    const double x = 1.0 - 2.0 * p.eps;
    y.push_back(x * x);
    w.push_back(p.weight);
  }
  kernels::power_sums(y, w, out);
  return out;
}

SeriesValue phi_of_poly(Functional tag, const Polynomial& rho, const Channel& a, double tol) {
  require_series_tag(tag);
  double lip = 0.0;
  for (int i = 1; i <= rho.degree(); ++i) lip += double(i) * std::abs(rho.coeff(i));

  std::vector<SeriesPoint> slow, fast, interior;
  const double budget_tail = coefficient_tail(tag, kSlowBudgetTerms);
  for (const auto& p : a.points()) {
    const double x = 1.0 - 2.0 * p.eps;
    const double y = x * x;
    if (y == 0.0) continue;  // the useless component has vanishing moments
    if (x == 1.0) {
      slow.push_back({x, y, p.weight});
      continue;
    }
    const double residual = budget_tail * lip * p.weight * std::pow(y, double(kSlowBudgetTerms + 1));
    (residual > tol / double(a.size()) ? interior : fast).push_back({x, y, p.weight});
  }
  // The closed-form part expands products of slow points; keep it bounded by
  // handing the fastest-decaying of them back to the explicit sum.
  std::sort(interior.begin(), interior.end(), [](const auto& l, const auto& r) { return l.y > r.y; });
  while (!interior.empty() &&
         log_binomial(double(rho.degree() + interior.size()), double(interior.size())) >
             std::log(kSlowProductCap)) {
    fast.push_back(interior.back());
    interior.pop_back();
  }
  slow.insert(slow.end(), interior.begin(), interior.end());

  const double slow_sum = slow_closed_form(tag, rho, slow);
  const double top = rho(1.0);
  if (fast.empty()) return {top - slow_sum, 0.0, 0};

  double ymax = 0.0, wfast = 0.0;
  for (const auto& p : fast) {
    ymax = std::max(ymax, p.y);
    wfast += p.w;
  }
  auto predicted = [&](std::size_t N) {
    return coefficient_tail(tag, N) * lip * wfast * std::pow(ymax, double(N + 1));
  };
  std::size_t hi = 16;
  while (hi < kMaxSeriesTerms && predicted(hi) > tol) hi = std::min(2 * hi, kMaxSeriesTerms);
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    (predicted(mid) > tol ? lo : hi) = mid;
  }
  const std::size_t N = hi;

  // Moments of both parts up to N + 1; the last fast moment feeds the bound.
  auto power_sums_of = [&](const std::vector<SeriesPoint>& pts) {
    std::vector<double> y, w, out(N + 1);
    for (const auto& p : pts) {
      y.push_back(p.y);
      w.push_back(p.w);
    }
    kernels::power_sums(y, w, out);
    return out;
  };
  const std::vector<double> s = power_sums_of(slow);
  const std::vector<double> f = power_sums_of(fast);
  const double fast_sum = kernels::poly_increment_sum(coefficients(tag, N), std::span(s).first(N),
                                                      std::span(f).first(N), rho.coeffs());
  const double bound = coefficient_tail(tag, N) * lip * f[N];
  return {top - slow_sum - fast_sum, bound, N};
}

SeriesValue phi_series(Functional tag, const Channel& a, int power, double tol) {
  if (power < 1) throw DomainError("phi_series: power must be >= 1");
  return phi_of_poly(tag, Polynomial::monomial(power), a, tol);
}

}  // namespace infocomb
