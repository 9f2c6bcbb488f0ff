#pragma once

#include <cstddef>
#include <functional>

namespace peridyn {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration with interval bisection.
///
/// Panels are refined worst-error-first until the accumulated error estimate
/// satisfies  err <= max(rel_tol * |value|, abs_tol). Exhausting the panel
/// budget first throws NumericalError carrying the last two estimates. When
/// every remaining panel is limited by floating-point round-off the loop
/// stops and reports the achieved (floor-level) error estimate instead of
/// churning the budget; callers with hard tolerance contracts check the
/// returned estimate. Kronrod nodes are interior, so integrable endpoint
/// behavior is tolerated as long as the integrand is finite at every
/// evaluated point.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol,
                                    double abs_tol = 0.0,
                                    std::size_t max_panels = (std::size_t{1} << 20));

/// Single non-adaptive K15 panel with embedded G7 error estimate.
QuadratureResult gk15_panel(const std::function<double(double)>& f, double a, double b);

} // namespace peridyn
