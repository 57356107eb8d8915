#pragma once

// Factories for the three benchmark problems: exponential growth, logistic
// growth, and logistic growth with a seasonally varying harvest term.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracnn/problem.hpp"
#include "fracnn/special_functions.hpp"

namespace fracnn {

namespace detail {

inline void check_order(double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0 || !std::isfinite(alpha))
        throw std::invalid_argument("model: order must lie in (0, 1]");
}

inline void check_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string("model: ") + name + " must be finite");
}

}  // namespace detail

/// D^alpha u = a u, u(0) = u0. Exact solution u0 * E_alpha(a t^alpha).
[[nodiscard]] inline ProblemSpec exp_growth(double alpha, double a, double u0) {
    detail::check_order(alpha);
    detail::check_finite(a, "a");
    detail::check_finite(u0, "u0");
    ProblemSpec p;
    p.label = "exp";
    p.u0 = u0;
    p.alpha = alpha;
    p.rhs = [a](double u, double) { return a * u; };
    p.rhs_du = [a](double, double) { return a; };
    p.analytic = [alpha, a, u0](double t) {
        return u0 * mittag_leffler(alpha, a * std::pow(t, alpha));
    };
    return p;
}

/// D^alpha u = a u (1 - u/cap), u(0) = u0. Closed form only at alpha = 1.
[[nodiscard]] inline ProblemSpec logistic(double alpha, double a, double cap, double u0) {
    detail::check_order(alpha);
    detail::check_finite(a, "a");
    detail::check_finite(u0, "u0");
    if (!(cap > 0.0) || !std::isfinite(cap))
        throw std::invalid_argument("model: carrying capacity must be positive");
    ProblemSpec p;
    p.label = "logistic";
    p.u0 = u0;
    p.alpha = alpha;
    p.rhs = [a, cap](double u, double) { return a * u * (1.0 - u / cap); };
    p.rhs_du = [a, cap](double u, double) { return a * (1.0 - 2.0 * u / cap); };
    if (alpha == 1.0) {
        p.analytic = [a, cap, u0](double t) {
            const double e = std::exp(a * t);
            return cap * u0 * e / (cap + u0 * (e - 1.0));
        };
    }
    return p;
}

/// D^alpha u = a u (1 - u/cap) - b (1 + sin(2 pi t)), u(0) = u0.
/// No closed form; validated against the time-marching reference scheme.
[[nodiscard]] inline ProblemSpec harvest(double alpha, double a, double cap, double b, double u0) {
    detail::check_order(alpha);
    detail::check_finite(a, "a");
    detail::check_finite(b, "b");
    detail::check_finite(u0, "u0");
    if (!(cap > 0.0) || !std::isfinite(cap))
        throw std::invalid_argument("model: carrying capacity must be positive");
    ProblemSpec p;
    p.label = "harvest";
    p.u0 = u0;
    p.alpha = alpha;
    p.rhs = [a, cap, b](double u, double t) {
        return a * u * (1.0 - u / cap) - b * (1.0 + std::sin(2.0 * std::numbers::pi * t));
    };
    p.rhs_du = [a, cap](double u, double) { return a * (1.0 - 2.0 * u / cap); };
    return p;
}

}  // namespace fracnn
