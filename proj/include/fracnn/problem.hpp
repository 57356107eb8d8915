#pragma once

// A scalar fractional-order initial value problem D^alpha u = rhs(u, t),
// u(0) = u0, bundled with the analytic pieces the trainer and the
// reference schemes need.

#include <functional>
#include <string>

namespace fracnn {

struct ProblemSpec {
    std::string label;
    double u0 = 0.0;
    double alpha = 1.0;
    /// Right-hand side f(u, t).
    std::function<double(double, double)> rhs;
    /// Partial derivative of rhs with respect to u, at (u, t).
    std::function<double(double, double)> rhs_du;
    /// Exact solution u(t) when one is known, empty otherwise.
    std::function<double(double)> analytic;
};

}  // namespace fracnn
