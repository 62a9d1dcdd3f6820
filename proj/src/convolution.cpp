#include "infocomb/convolution.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "infocomb/error.hpp"

namespace infocomb {

ConvolvedSupport check_convolve_with_provenance(const Channel& a, const Channel& b) {
  std::vector<MassPoint> pts;
  pts.reserve(a.size() * b.size());
  for (const auto& p : a.points()) {
    const double x = 1.0 - 2.0 * p.eps;
    for (const auto& q : b.points()) {
      const double y = 1.0 - 2.0 * q.eps;
      // The perfect point is an exact identity, the useless one absorbs.
      double eps = 0.5 * (1.0 - x * y);
      if (p.eps == 0.0) eps = q.eps;
      if (q.eps == 0.0) eps = p.eps;
      if (p.eps == 0.5 || q.eps == 0.5) eps = 0.5;
      pts.push_back({eps, p.weight * q.weight});
    }
  }
  const std::size_t raw = pts.size();
  return {Channel::from_points(std::move(pts)), raw};
}

Channel check_convolve(const Channel& a, const Channel& b) {
  return check_convolve_with_provenance(a, b).channel;
}

double projected_power_support(const Channel& a, int d) {
  std::size_t interior = 0;
  bool absorbing = false;
  for (const auto& p : a.points()) {
    if (p.eps == 0.5)
      absorbing = true;
    else if (p.eps > 0.0)
      ++interior;
  }
  // log C(d + m, m) via lgamma.
  const double m = double(interior), n = double(d);
  const double log_count = std::lgamma(n + m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0);
  return std::exp(log_count) + (absorbing ? 1.0 : 0.0);
}

Channel check_power(const Channel& a, int d, std::size_t cap) {
  if (d < 1) throw DomainError("check_power: d must be >= 1");
  const double projected = projected_power_support(a, d);
  if (projected > double(cap))
    throw CapacityError("check_power: projected support " + std::to_string(std::llround(projected)) +
                        " exceeds cap " + std::to_string(cap) + "; use series evaluation instead");
  Channel result = a;
  for (int k = 1; k < d; ++k) result = check_convolve(result, a);
  return result;
}

}  // namespace infocomb
