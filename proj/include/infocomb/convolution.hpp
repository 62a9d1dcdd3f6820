#pragma once

#include <cstddef>

#include "infocomb/channel.hpp"

namespace infocomb {

/// Result of a check-node convolution together with the number of raw
/// product terms that were merged into it.
struct ConvolvedSupport {
  Channel channel;
  std::size_t raw_terms;
};

/// Default cap on the merged support of an explicit power.
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// a [check] b: every pair of mass points combines to
/// eps'' = (1 - (1 - 2 eps)(1 - 2 eps')) / 2 with weight w w'.
Channel check_convolve(const Channel& a, const Channel& b);
ConvolvedSupport check_convolve_with_provenance(const Channel& a, const Channel& b);

/// Upper bound on the merged support size of the d-fold power of `a`.
/// Points at eps = 0 act as the identity and points at eps = 1/2 absorb,
/// so only the m interior points generate distinct products: at most
/// C(d + m, m) of them, plus the absorbing point. Returned as a double to
/// survive overflow.
double projected_power_support(const Channel& a, int d);

/// d-fold check convolution of `a` with itself. Throws CapacityError when
/// the projected support exceeds `cap`, DomainError when d < 1.
Channel check_power(const Channel& a, int d, std::size_t cap = kDefaultSupportCap);

}  // namespace infocomb
