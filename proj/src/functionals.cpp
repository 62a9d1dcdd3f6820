#include "infocomb/functionals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "infocomb/error.hpp"

namespace infocomb {

std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::E: return "E";
    case Functional::H: return "H";
    case Functional::B: return "B";
  }
  return "?";
}

Functional parse_functional(std::string_view s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'E': return Functional::E;
      case 'H': return Functional::H;
      case 'B': return Functional::B;
    }
  }
  throw ParseError("unknown functional `" + std::string(s) + "` (expected E, H or B)");
}

double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  // log1p keeps the (1-x) term accurate for small x.
  return (-x * std::log(x) - (1.0 - x) * std::log1p(-x)) / std::numbers::ln2;
}

double h2_inv(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 64; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h2(mid) < y ? lo : hi) = mid;
  }
  return std::abs(h2(lo) - y) <= std::abs(h2(hi) - y) ? lo : hi;
}

double kernel(Functional f, double x) {
  x = std::clamp(x, 0.0, 1.0);
  switch (f) {
    case Functional::H: return h2(0.5 * (1.0 - x));
    case Functional::B: return std::sqrt((1.0 - x) * (1.0 + x));
    case Functional::E: break;
  }
  throw DomainError("functional E has no kernel");
}

double kernel_inv(Functional f, double y) {
  y = std::clamp(y, 0.0, 1.0);
  switch (f) {
    case Functional::H: return 1.0 - 2.0 * h2_inv(y);
    // sqrt(1 - x^2) is an involution on [0, 1].
    case Functional::B: return std::sqrt((1.0 - y) * (1.0 + y));
    case Functional::E: break;
  }
  throw DomainError("functional E has no kernel");
}

double pointwise(Functional f, double eps) {
  switch (f) {
    case Functional::E: return eps;
    case Functional::H: return h2(eps);
    case Functional::B: return 2.0 * std::sqrt(eps * (1.0 - eps));
  }
  return 0.0;
}

double evaluate(Functional f, const Channel& a) {
  double s = 0.0;
  for (const auto& p : a.points()) s += p.weight * pointwise(f, p.eps);
  return s;
}

}  // namespace infocomb
