#include "peridyn/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace peridyn {
namespace {

constexpr double kSeriesSwitch = 16.0;
constexpr double kSincSeriesThreshold = 1e-4;

double bessel_series(int nu, double x) {
    // J_nu(x) = (x/2)^nu * sum_k (-1)^k (x^2/4)^k / (k! (k+nu)!)
    const double q = 0.25 * x * x;
    double term = 1.0;
    for (int j = 1; j <= nu; ++j) term *= 0.5 * x / j;
    double sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// Hankel asymptotic expansion: J_nu(x) ~ sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),
// chi = x - (2 nu + 1) pi / 4, with P, Q built from the coefficients
//   b_k = b_{k-1} (mu - (2k-1)^2) / (8k),  mu = 4 nu^2,  b_0 = 1,
// so that P = sum_m (-1)^m b_{2m} x^{-2m}, Q = sum_m (-1)^m b_{2m+1} x^{-(2m+1)}.
double bessel_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double b[10];
    b[0] = 1.0;
    for (int k = 1; k < 10; ++k) {
        const double odd = 2.0 * k - 1.0;
        b[k] = b[k - 1] * (mu - odd * odd) / (8.0 * k);
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double inv4 = inv2 * inv2;
    const double p = b[0] - b[2] * inv2 + b[4] * inv4 - b[6] * inv4 * inv2 + b[8] * inv4 * inv4;
    const double q = inv * (b[1] - b[3] * inv2 + b[5] * inv4 - b[7] * inv4 * inv2 + b[9] * inv4 * inv4);
    const double chi = x - (2.0 * nu + 1.0) * std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j(int nu, double x) {
    const double ax = std::abs(x);
    double value = (ax <= kSeriesSwitch) ? bessel_series(nu, ax) : bessel_asymptotic(nu, ax);
    if (x < 0.0 && nu % 2 == 1) value = -value;
    return value;
}

} // namespace

double bessel_j0(double x) { return bessel_j(0, x); }

double bessel_j1(double x) { return bessel_j(1, x); }

double sinc(double x) {
    if (std::abs(x) < kSincSeriesThreshold) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

} // namespace peridyn
