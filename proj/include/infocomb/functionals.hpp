#pragma once

#include <string>
#include <string_view>

#include "infocomb/channel.hpp"

namespace infocomb {

/// Error probability E, entropy H, Bhattacharyya B.
enum class Functional { E, H, B };

std::string_view to_string(Functional f);
/// Accepts "E", "H", "B" (case-insensitive). Throws ParseError otherwise.
Functional parse_functional(std::string_view s);

/// Binary entropy in bits; h2(0) = h2(1) = 0.
double h2(double x);

/// Inverse of h2 restricted to [0, 1/2]. Bisection, 64 halvings.
double h2_inv(double y);

/// f_H(x) = h2((1 - x) / 2), f_B(x) = sqrt(1 - x^2) on [0, 1].
/// Throws DomainError for Functional::E, which has no kernel.
double kernel(Functional f, double x);

/// Decreasing inverse of `kernel` on [0, 1].
double kernel_inv(Functional f, double y);

/// E(a) = sum w eps, H(a) = sum w h2(eps), B(a) = sum w 2 sqrt(eps (1 - eps)).
double evaluate(Functional f, const Channel& a);

/// Value of the functional on the useless channel: 1/2 for E, 1 otherwise.
inline double useless_value(Functional f) { return f == Functional::E ? 0.5 : 1.0; }

/// Per-point integrand: eps, h2(eps) or 2 sqrt(eps (1 - eps)).
double pointwise(Functional f, double eps);

}  // namespace infocomb
