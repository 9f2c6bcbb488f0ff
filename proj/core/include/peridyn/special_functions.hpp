#pragma once

namespace peridyn {

/// Bessel J0. Power series for |x| <= 16, Hankel asymptotic expansion beyond.
/// Absolute error is at machine level in the series region and below ~5e-11
/// near the switchover, shrinking like x^-8 for larger arguments.
double bessel_j0(double x);

/// Bessel J1, same evaluation strategy and accuracy profile as bessel_j0.
double bessel_j1(double x);

/// sin(x)/x with the removable singularity filled in by a Taylor series for
/// |x| below 1e-4 (three terms; error under 1e-25 at the threshold).
double sinc(double x);

} // namespace peridyn
