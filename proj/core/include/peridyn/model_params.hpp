#pragma once

#include "peridyn/cutoff.hpp"

namespace peridyn {

/// Constitutive tuple of the nonlocal bond model: spatial dimension, horizon
/// length delta, singularity exponent alpha in (0,1), stiffness kappa, and the
/// radial cutoff profile.
struct ModelParams {
    int dim = 1;
    double delta = 0.1;
    double alpha = 0.5;
    double kappa = 1.0;
    CutoffProfile cutoff{};

    /// Throws ConfigError unless d in {1,2,3}, delta > 0, alpha in (0,1), kappa > 0.
    void validate() const;
};

/// Lebesgue measure of the unit ball in dimension d (2, pi, 4pi/3).
double ball_volume(int dim);

/// Surface measure of the unit sphere in dimension d (2, 2pi, 4pi).
double sphere_measure(int dim);

} // namespace peridyn
