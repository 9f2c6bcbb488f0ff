#include "peridyn/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "peridyn/errors.hpp"
#include "peridyn/quadrature.hpp"
#include "peridyn/special_functions.hpp"

namespace peridyn {

namespace {

constexpr double kPi = std::numbers::pi;

void check_tolerance(double rel_tol) {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
        throw DomainError("relative tolerance must lie in (0, 1e-3]");
    }
}

// Oscillatory tail integrals closed by repeated integration by parts. Each
// value comes with a rigorous bound on the truncated remainder.
struct TailPiece {
    double value = 0.0;
    double bound = 0.0;
};

// integral_M^inf cos(rho) rho^-beta drho (kind 0) or sin (kind 1), beta > 1.
TailPiece trig_tail(int kind, double beta, double m, int depth) {
    if (depth == 0) {
        return TailPiece{0.0, std::pow(m, 1.0 - beta) / (beta - 1.0)};
    }
    const double mb = std::pow(m, -beta);
    if (kind == 0) {
        TailPiece inner = trig_tail(1, beta + 1.0, m, depth - 1);
        return TailPiece{-std::sin(m) * mb + beta * inner.value, beta * inner.bound};
    }
    TailPiece inner = trig_tail(0, beta + 1.0, m, depth - 1);
    return TailPiece{std::cos(m) * mb - beta * inner.value, beta * inner.bound};
}

// integral_M^inf J_nu(rho) rho^-beta drho for nu = 0, 1 via the recurrences
// d(rho J1) = rho J0 drho and dJ0 = -J1 drho; |J_nu| <= sqrt(2/(pi rho)).
TailPiece bessel_tail(int nu, double beta, double m, int depth) {
    if (depth == 0) {
        const double env = std::sqrt(2.0 / kPi) * std::pow(m, 0.5 - beta) / (beta - 0.5);
        return TailPiece{0.0, env};
    }
    const double mb = std::pow(m, -beta);
    if (nu == 0) {
        TailPiece inner = bessel_tail(1, beta + 1.0, m, depth - 1);
        return TailPiece{-bessel_j1(m) * mb + (beta + 1.0) * inner.value, (beta + 1.0) * inner.bound};
    }
    TailPiece inner = bessel_tail(0, beta + 1.0, m, depth - 1);
    return TailPiece{bessel_j0(m) * mb - beta * inner.value, beta * inner.bound};
}

// integral_M^inf A_d(rho) rho^(-1-2alpha) drho. A_d splits into the constant
// sphere measure (exact power tail) minus an oscillatory part handled above.
TailPiece angular_tail(int dim, double alpha, double m) {
    const double beta = 1.0 + 2.0 * alpha;
    TailPiece result;
    result.value = sphere_measure(dim) * std::pow(m, -2.0 * alpha) / (2.0 * alpha);
    TailPiece osc;
    switch (dim) {
        case 1: {
            osc = trig_tail(0, beta, m, 4);
            osc.value *= 2.0;
            osc.bound *= 2.0;
            break;
        }
        case 2: {
            osc = bessel_tail(0, beta, m, 4);
            osc.value *= 2.0 * kPi;
            osc.bound *= 2.0 * kPi;
            break;
        }
        case 3: {
            osc = trig_tail(1, beta + 1.0, m, 4);
            osc.value *= 4.0 * kPi;
            osc.bound *= 4.0 * kPi;
            break;
        }
        default:
            throw ConfigError("angular_tail: dimension must be 1, 2, or 3");
    }
    result.value -= osc.value;
    result.bound = osc.bound;
    return result;
}

// Remainder integral  integral_0^1 chi(rho) R_d(m rho) rho^(-1-2alpha) drho
// with R_d = angular_kernel_remainder; the integrand vanishes like
// rho^(3-2alpha) at the origin.
QuadratureResult remainder_integral(const ModelParams& params, double m, double a, double b,
                                    double rel_tol, double abs_floor) {
    const double expo = -1.0 - 2.0 * params.alpha;
    auto f = [&](double rho) {
        return cutoff_eval(params.cutoff, rho) * angular_kernel_remainder(params.dim, m * rho) *
               std::pow(rho, expo);
    };
    if (params.cutoff.kind == CutoffKind::PlateauSmooth && a < 0.5 && b > 0.5) {
        QuadratureResult left = integrate_adaptive(f, a, 0.5, rel_tol, abs_floor);
        QuadratureResult right = integrate_adaptive(f, 0.5, b, rel_tol, abs_floor);
        return QuadratureResult{left.value + right.value, left.error_estimate + right.error_estimate,
                                left.panels + right.panels};
    }
    return integrate_adaptive(f, a, b, rel_tol, abs_floor);
}

// integral_0^1 chi(rho) A_d(m rho) rho^(-1-2alpha) drho, singular end handled
// analytically as described on omega_delta_squared.
double symbol_integral(const ModelParams& params, double m, double rel_tol) {
    const double alpha = params.alpha;
    const double expo = -1.0 - 2.0 * alpha;
    const double rho0 = std::min(0.5, 1.0 / (m + 1.0));

    // chi == 1 on [0, rho0]; quadratic part of A_d integrates exactly.
    const double head = 0.5 * ball_volume(params.dim) * m * m *
                        std::pow(rho0, 2.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    const double floor = std::abs(head) * rel_tol * 0.25;

    QuadratureResult rem = remainder_integral(params, m, 0.0, rho0, rel_tol * 0.25, floor);

    auto f = [&](double rho) {
        return cutoff_eval(params.cutoff, rho) * angular_kernel(params.dim, m * rho) *
               std::pow(rho, expo);
    };
    QuadratureResult body{0.0, 0.0, 0};
    if (rho0 < 1.0) {
        if (params.cutoff.kind == CutoffKind::PlateauSmooth && rho0 < 0.5) {
            QuadratureResult p1 = integrate_adaptive(f, rho0, 0.5, rel_tol * 0.25, floor);
            QuadratureResult p2 = integrate_adaptive(f, 0.5, 1.0, rel_tol * 0.25, floor);
            body = QuadratureResult{p1.value + p2.value, p1.error_estimate + p2.error_estimate,
                                    p1.panels + p2.panels};
        } else {
            body = integrate_adaptive(f, rho0, 1.0, rel_tol * 0.25, floor);
        }
    }

    const double total = head + rem.value + body.value;
    const double err = rem.error_estimate + body.error_estimate;
    if (total > 0.0 && err > rel_tol * total) {
        throw NumericalError("omega_delta: accumulated quadrature error above tolerance",
                             total - err, total);
    }
    return total;
}

} // namespace

void ModelParams::validate() const {
    if (dim < 1 || dim > 3) throw ConfigError("model: dimension must be 1, 2, or 3");
    if (!(delta > 0.0)) throw ConfigError("model: horizon delta must be positive");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw ConfigError("model: alpha must lie in (0, 1)");
    if (!(kappa > 0.0)) throw ConfigError("model: kappa must be positive");
}

double ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return kPi;
        case 3: return 4.0 * kPi / 3.0;
    }
    throw ConfigError("ball_volume: dimension must be 1, 2, or 3");
}

double sphere_measure(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
    }
    throw ConfigError("sphere_measure: dimension must be 1, 2, or 3");
}

namespace {

// 1 - J0(s) and 1 - sin(s)/s by series below s = 1; the direct differences
// lose relative accuracy like s^-2 near zero.
double one_minus_j0(double s) {
    if (s > 1.0) return 1.0 - bessel_j0(s);
    const double q = 0.25 * s * s;
    double term = q; // k = 1
    double sum = 0.0;
    for (int k = 1; k < 30; ++k) {
        sum += term;
        term *= -q / ((k + 1.0) * (k + 1.0));
        if (std::abs(term) < 1e-20 * (sum + 1e-300)) break;
    }
    return sum;
}

double one_minus_sinc(double s) {
    if (s > 1.0) return 1.0 - sinc(s);
    const double s2 = s * s;
    double term = s2 / 6.0; // k = 1
    double sum = 0.0;
    for (int k = 1; k < 30; ++k) {
        sum += term;
        term *= -s2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        if (std::abs(term) < 1e-20 * (sum + 1e-300)) break;
    }
    return sum;
}

} // namespace

double angular_kernel(int dim, double s) {
    if (s < 0.0) throw DomainError("angular_kernel: argument must be nonnegative");
    switch (dim) {
        case 1: {
            // 2 (1 - cos s) = 4 sin^2(s/2), stable at small s.
            const double half = std::sin(0.5 * s);
            return 4.0 * half * half;
        }
        case 2: return 2.0 * kPi * one_minus_j0(s);
        case 3: return 4.0 * kPi * one_minus_sinc(s);
    }
    throw ConfigError("angular_kernel: dimension must be 1, 2, or 3");
}

double angular_kernel_remainder(int dim, double s) {
    if (s < 0.0) throw DomainError("angular_kernel_remainder: argument must be nonnegative");
    const double quad = 0.5 * ball_volume(dim) * s * s;
    if (s > 2.0) {
        return angular_kernel(dim, s) - quad;
    }
    // Alternating series of A_d(s) starting at the s^4 term; ~20 terms reach
    // machine precision for s <= 2.
    const double s2 = s * s;
    double sum = 0.0;
    double term;
    switch (dim) {
        case 1: {
            // 2 sum_{k>=2} (-1)^(k+1) s^(2k) / (2k)!
            term = -2.0 * s2 * s2 / 24.0; // k = 2
            for (int k = 2; k < 40; ++k) {
                sum += term;
                term *= -s2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
                if (std::abs(term) < 1e-300) break;
            }
            return sum;
        }
        case 2: {
            // 2 pi sum_{k>=2} (-1)^(k+1) (s/2)^(2k) / (k!)^2
            const double q = 0.25 * s2;
            term = -2.0 * kPi * q * q / 4.0; // k = 2
            for (int k = 2; k < 40; ++k) {
                sum += term;
                term *= -q / ((k + 1.0) * (k + 1.0));
                if (std::abs(term) < 1e-300) break;
            }
            return sum;
        }
        case 3: {
            // 4 pi sum_{k>=2} (-1)^(k+1) s^(2k) / (2k+1)!
            term = -4.0 * kPi * s2 * s2 / 120.0; // k = 2
            for (int k = 2; k < 40; ++k) {
                sum += term;
                term *= -s2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
                if (std::abs(term) < 1e-300) break;
            }
            return sum;
        }
    }
    throw ConfigError("angular_kernel_remainder: dimension must be 1, 2, or 3");
}

double cutoff_radial_moment(const CutoffProfile& cutoff, double p, double rel_tol) {
    if (p <= -1.0) throw DomainError("cutoff_radial_moment: exponent must exceed -1");
    const double head = std::pow(0.5, p + 1.0) / (p + 1.0);
    auto f = [&](double rho) { return cutoff_eval(cutoff, rho) * std::pow(rho, p); };
    QuadratureResult bridge = integrate_adaptive(f, 0.5, 1.0, rel_tol, head * rel_tol * 0.5);
    return head + bridge.value;
}

double omega_delta_squared(const ModelParams& params, double r, double rel_tol) {
    params.validate();
    check_tolerance(rel_tol);
    if (r < 0.0) throw DomainError("omega_delta: radial frequency must be nonnegative");
    if (r == 0.0) return 0.0;
    const double m = params.delta * r;
    const double integral = symbol_integral(params, m, rel_tol);
    return params.kappa / (params.delta * params.delta) * integral;
}

double omega_delta(const ModelParams& params, double r, double rel_tol) {
    return std::sqrt(omega_delta_squared(params, r, rel_tol));
}

double omega_gap_vs_wave(const ModelParams& params, double r, double rel_tol) {
    params.validate();
    check_tolerance(rel_tol);
    if (r < 0.0) throw DomainError("omega_gap_vs_wave: radial frequency must be nonnegative");
    if (r == 0.0) return 0.0;
    const double m = params.delta * r;
    QuadratureResult rem = remainder_integral(params, m, 0.0, 1.0, rel_tol * 0.5, 0.0);
    const double gap_sq = params.kappa / (params.delta * params.delta) * rem.value;
    const double gamma = gamma_constant(params, rel_tol);
    const double omega_sq = gamma * gamma * r * r + gap_sq;
    const double omega = std::sqrt(std::max(omega_sq, 0.0));
    const double denom = omega + gamma * r;
    return denom > 0.0 ? gap_sq / denom : 0.0;
}

double gamma_constant(const ModelParams& params, double rel_tol) {
    params.validate();
    check_tolerance(rel_tol);
    const double moment = cutoff_radial_moment(params.cutoff, 1.0 - 2.0 * params.alpha, rel_tol);
    return std::sqrt(0.5 * params.kappa * ball_volume(params.dim) * moment);
}

double lambda_constant(const ModelParams& params, double rel_tol) {
    params.validate();
    check_tolerance(rel_tol);
    const double alpha = params.alpha;
    const double expo = -1.0 - 2.0 * alpha;
    const int dim = params.dim;

    // [0, 1]: quadratic part analytic + series remainder (no cutoff here).
    const double head = 0.5 * ball_volume(dim) / (2.0 - 2.0 * alpha);
    auto f_rem = [&](double rho) {
        return angular_kernel_remainder(dim, rho) * std::pow(rho, expo);
    };
    QuadratureResult rem = integrate_adaptive(f_rem, 0.0, 1.0, rel_tol * 0.25, head * rel_tol * 0.25);

    // [1, M]: direct adaptive integration of the oscillatory integrand.
    const double truncation = 1000.0;
    auto f_mid = [&](double rho) { return angular_kernel(dim, rho) * std::pow(rho, expo); };
    QuadratureResult mid = integrate_adaptive(f_mid, 1.0, truncation, rel_tol * 0.25,
                                              head * rel_tol * 0.25);

    // [M, inf): exact sphere-measure tail minus integration-by-parts
    // correction; its remainder bound joins the error budget.
    TailPiece tail = angular_tail(dim, alpha, truncation);

    const double integral = head + rem.value + mid.value + tail.value;
    const double err = rem.error_estimate + mid.error_estimate + tail.bound;
    if (err > rel_tol * integral) {
        throw NumericalError("lambda_constant: error budget above tolerance",
                             integral - err, integral);
    }
    const double scale = params.kappa * std::pow(params.delta, -2.0 * (1.0 - alpha));
    return std::sqrt(scale * integral);
}

void DispersionProfile::write_csv(std::ostream& out) const {
    out << "r,omega,omega_over_r,omega_over_r_alpha\n";
    char line[256];
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const double w = omega[i];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", r, w, w / r,
                      w / std::pow(r, params.alpha));
        out << line;
    }
}

DispersionProfile build_dispersion_profile(const ModelParams& params, double r_max,
                                           int n_samples, double rel_tol) {
    params.validate();
    check_tolerance(rel_tol);
    if (!(r_max > 0.0)) throw DomainError("build_dispersion_profile: r_max must be positive");
    if (n_samples < 16) throw DomainError("build_dispersion_profile: need at least 16 samples");

    DispersionProfile profile;
    profile.params = params;
    profile.quadrature_tol = rel_tol;
    profile.gamma = gamma_constant(params, rel_tol);
    profile.lambda = lambda_constant(params, rel_tol);

    const double r_min = r_max * 1e-7;
    const double ratio = std::pow(r_max / r_min, 1.0 / (n_samples - 1));
    profile.radii.resize(n_samples);
    profile.omega.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double r = (i == n_samples - 1) ? r_max : r_min * std::pow(ratio, i);
        profile.radii[i] = r;
        profile.omega[i] = omega_delta(params, r, rel_tol);
    }

    for (int i = 0; i < n_samples; ++i) {
        if (!(profile.omega[i] > 0.0)) {
            throw InvariantError("dispersion profile: omega must be positive at positive radii");
        }
        if (i > 0 && !(profile.radii[i] > profile.radii[i - 1])) {
            throw InvariantError("dispersion profile: radii must be strictly increasing");
        }
    }

    // Low-frequency slope approaches gamma at the small end of the table. The
    // admissible deviation combines the quadrature tolerance with the exact
    // quartic-moment envelope |omega/r - gamma| <= (c4/gamma) (delta r)^2 / delta^0,
    // c4 = kappa/24 * integral of chi(|z|) (z.nu)^4 |z|^(-d-2alpha).
    const double angular_fourth = 3.0 * sphere_measure(params.dim) /
                                  (params.dim * (params.dim + 2.0));
    const double c4 = params.kappa / 24.0 * angular_fourth *
                      cutoff_radial_moment(params.cutoff, 3.0 - 2.0 * params.alpha, rel_tol);
    const double margin = 10.0 * rel_tol * profile.gamma;
    const double r0 = profile.radii.front();
    const double dev0 = std::abs(profile.omega.front() / r0 - profile.gamma);
    if (dev0 > margin + c4 / profile.gamma * params.delta * params.delta * r0 * r0) {
        throw InvariantError("dispersion profile: omega/r misses gamma at the smallest node");
    }
    for (int i = 0; i + 1 < std::min(n_samples, 8); ++i) {
        const double dev_small = std::abs(profile.omega[i] / profile.radii[i] - profile.gamma);
        const double dev_next = std::abs(profile.omega[i + 1] / profile.radii[i + 1] - profile.gamma);
        if (dev_small > dev_next + margin) {
            throw InvariantError("dispersion profile: |omega/r - gamma| fails to shrink toward r = 0");
        }
    }

    // High-frequency plateau wherever the table reaches delta * r >= 1e3.
    for (int i = 0; i < n_samples; ++i) {
        if (params.delta * profile.radii[i] >= 1e3) {
            const double ratio_hf = profile.omega[i] / std::pow(profile.radii[i], params.alpha);
            if (std::abs(ratio_hf - profile.lambda) > 0.01 * profile.lambda) {
                throw InvariantError("dispersion profile: high-frequency plateau outside 1% of lambda");
            }
        }
    }

    return profile;
}

} // namespace peridyn
