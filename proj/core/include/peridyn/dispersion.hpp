#pragma once

#include <iosfwd>
#include <vector>

#include "peridyn/model_params.hpp"

namespace peridyn {

/// Spherical average of the plane-wave defect: A_d(s) = integral over the unit
/// sphere of 1 - cos(s theta_1). Closed forms:
///   A_1(s) = 2 (1 - cos s),  A_2(s) = 2 pi (1 - J0(s)),  A_3(s) = 4 pi (1 - sin(s)/s),
/// with the s = 0 limits taken exactly. A_d(s) = ball_volume(d) s^2 / 2 + O(s^4).
double angular_kernel(int dim, double s);

/// A_d(s) - ball_volume(d) s^2 / 2, evaluated by series for small s so the
/// cancellation between the two terms never hits floating point. Always <= 0.
double angular_kernel_remainder(int dim, double s);

/// integral_0^1 chi(rho) rho^p drho, p > -1. The plateau part [0, 1/2] is
/// analytic, the bridge part is integrated adaptively.
double cutoff_radial_moment(const CutoffProfile& cutoff, double p, double rel_tol);

/// Dispersion relation of the bond operator at radial frequency r:
///   omega(r)^2 = kappa delta^-2 integral_0^1 chi(rho) A_d(delta r rho) rho^(-1-2 alpha) drho.
/// The integrable rho^(1-2alpha) singularity is removed by splitting at
/// rho0 = min(1/2, 1/(delta r + 1)): on [0, rho0] the quadratic part of A_d is
/// integrated analytically and only the O(rho^(3-2alpha)) remainder goes to
/// quadrature; [rho0, 1] is integrated adaptively. Relative error <= rel_tol,
/// estimated from the quadrature error sums; non-convergence within the panel
/// budget raises NumericalError with the last two estimates.
double omega_delta_squared(const ModelParams& params, double r, double rel_tol = 1e-9);
double omega_delta(const ModelParams& params, double r, double rel_tol = 1e-9);

/// omega(r) - gamma * r without catastrophic cancellation: the quadratic part
/// of the symbol integral cancels gamma^2 r^2 exactly, so the difference is
/// computed from the remainder integral alone. Always <= 0.
double omega_gap_vs_wave(const ModelParams& params, double r, double rel_tol = 1e-9);

/// Low-frequency slope of the dispersion relation (limit wave speed):
///   gamma = ( kappa/2 ball_volume(d) integral_0^1 chi(rho) rho^(1-2alpha) drho )^(1/2).
double gamma_constant(const ModelParams& params, double rel_tol = 1e-9);

/// High-frequency coefficient, limit of omega(r) / r^alpha:
///   lambda = ( kappa delta^(-2(1-alpha)) integral_0^inf A_d(rho) rho^(-1-2alpha) drho )^(1/2).
/// The radial integral is split at 1 (series-remainder treatment of the
/// singular end), integrated adaptively up to a truncation radius, and closed
/// with the exact power tail of the sphere measure plus an integration-by-parts
/// evaluation of the oscillatory remainder whose bound joins the error budget.
double lambda_constant(const ModelParams& params, double rel_tol = 1e-9);

/// Tabulated radial dispersion relation with its asymptotic constants.
/// Invariants checked at build time: omega > 0 off zero, radii strictly
/// increasing, omega/r near gamma at the smallest nodes, and the
/// high-frequency plateau |omega/r^alpha - lambda| <= 1% lambda wherever
/// delta*r >= 1e3.
struct DispersionProfile {
    ModelParams params;
    double gamma = 0.0;
    double lambda = 0.0;
    double quadrature_tol = 0.0;
    std::vector<double> radii;
    std::vector<double> omega;

    /// CSV with header: r,omega,omega_over_r,omega_over_r_alpha
    void write_csv(std::ostream& out) const;
};

/// Geometric radius table over [r_max * 1e-7, r_max], n_samples >= 16.
DispersionProfile build_dispersion_profile(const ModelParams& params, double r_max,
                                           int n_samples, double rel_tol = 1e-9);

} // namespace peridyn
