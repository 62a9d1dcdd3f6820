#include "infocomb/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "infocomb/error.hpp"

namespace infocomb {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw DomainError("polynomial coefficient is not finite");
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) throw DomainError("polynomial must have degree >= 1");
}

Polynomial Polynomial::monomial(int degree, double coeff) {
  if (degree < 1) throw DomainError("monomial degree must be >= 1");
  std::vector<double> c(std::size_t(degree), 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

double Polynomial::coeff(int i) const noexcept {
  return i >= 1 && i <= degree() ? coeffs_[std::size_t(i - 1)] : 0.0;
}

double Polynomial::derivative(double x, int k) const {
  // d^k/dx^k x^i = i!/(i-k)! x^(i-k); Horner over the surviving powers.
  double acc = 0.0;
  for (int i = degree(); i >= std::max(k, 1); --i) {
    double falling = 1.0;
    for (int j = 0; j < k; ++j) falling *= double(i - j);
    acc = acc * x + falling * coeffs_[std::size_t(i - 1)];
  }
  // Horner above accumulated powers x^(i-k) down to the lowest surviving index.
  const int lowest = std::max(k, 1);
  return acc * std::pow(x, lowest - k);
}

double Polynomial::abs_sum() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s += std::abs(c);
  return s;
}

std::string Polynomial::to_string() const {
  std::string out;
  for (int i = 1; i <= degree(); ++i) {
    double c = coeff(i);
    if (c == 0.0) continue;
    char buf[64];
    if (out.empty())
      std::snprintf(buf, sizeof buf, "%.17g*x^%d", c, i);
    else
      std::snprintf(buf, sizeof buf, " %c %.17g*x^%d", c < 0 ? '-' : '+', std::abs(c), i);
    out += buf;
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += char(std::tolower(static_cast<unsigned char>(ch)));
  if (s.empty()) throw ParseError("empty polynomial");

  std::vector<double> coeffs;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      throw ParseError("expected + or - before term at offset " + std::to_string(pos));
    }
    first = false;

    double c = 1.0;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), c);
      if (ec != std::errc{}) throw ParseError("bad coefficient at offset " + std::to_string(pos));
      pos = std::size_t(ptr - s.data());
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos >= s.size() || s[pos] != 'x')
      throw ParseError("constant terms are not allowed (rho(0) must be 0)");
    ++pos;
    int k = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), k);
      if (ec != std::errc{} || k < 1) throw ParseError("exponent must be a positive integer");
      pos = std::size_t(ptr - s.data());
    }
    if (coeffs.size() < std::size_t(k)) coeffs.resize(std::size_t(k), 0.0);
    coeffs[std::size_t(k - 1)] += sign * c;
  }
  try {
    return Polynomial(std::move(coeffs));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

double min_derivative_on(const Polynomial& rho, int k, double x_max) {
  x_max = std::clamp(x_max, 0.0, 1.0);
  double best = std::min(rho.derivative(0.0, k), rho.derivative(x_max, k));
  if (x_max == 0.0 || k + 1 > rho.degree()) return best;

  constexpr int kCells = 4096;
  auto slope = [&](double x) { return rho.derivative(x, k + 1); };
  double x0 = 0.0, s0 = slope(0.0);
  for (int c = 1; c <= kCells; ++c) {
    const double x1 = x_max * double(c) / kCells;
    const double s1 = slope(x1);
    best = std::min(best, rho.derivative(x1, k));
    if ((s0 < 0.0) != (s1 < 0.0)) {
      double lo = x0, hi = x1, slo = s0;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double sm = slope(mid);
        if ((sm < 0.0) == (slo < 0.0)) {
          lo = mid;
          slo = sm;
        } else {
          hi = mid;
        }
      }
      best = std::min({best, rho.derivative(lo, k), rho.derivative(hi, k)});
    }
    x0 = x1;
    s0 = s1;
  }
  return best;
}

bool poly_increasing_on(const Polynomial& rho, double x_max) {
  return min_derivative_on(rho, 1, x_max) >= -1e-12;
}

bool poly_convex_on(const Polynomial& rho, double x_max) {
  return min_derivative_on(rho, 2, x_max) >= -1e-12;
}

}  // namespace infocomb
