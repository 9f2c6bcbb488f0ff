#pragma once

#include "peridyn/spectral_field.hpp"
#include "peridyn/symbol_table.hpp"

namespace peridyn {

/// Below this phase magnitude sin(omega t)/omega switches to a Taylor series
/// in (omega t) to avoid cancellation; see sin_phase_over_omega.
inline constexpr double kPhaseSeriesThreshold = 1e-4;

/// sin(omega t)/omega with the omega -> 0 limit t, series-guarded for small
/// |omega t|.
double sin_phase_over_omega(double omega, double t);

/// Closed-form flow of  d2/dt2 coeff = -omega^2 coeff  per mode:
///   u(t) = cos(omega t) u0 + sin(omega t)/omega v0,
///   v(t) = -omega sin(omega t) u0 + cos(omega t) v0,
/// with the omega = 0 limits u(t) = u0 + t v0, v(t) = v0. Requires t >= 0 and
/// Hermitian-symmetric input; preserves Hermitian symmetry.
EvolutionState evolve(const SymbolTable& table, const EvolutionState& state, double t);

/// Max mode-wise deviation between evolve(state, t + s) and
/// evolve(evolve(state, t), s), relative to the largest coefficient of the
/// one-shot result. The closed-form flow makes this a pure trig-identity
/// check; contract: < 1e-11.
double flow_composition_check(const SymbolTable& table, const EvolutionState& state,
                              double t, double s);

enum class LeapfrogForce {
    /// Force by the mode-wise multiplier -omega^2.
    SpectralMultiplier,
    /// Force by inverse transform, stencil application, forward transform.
    RealSpaceStencil,
};

/// Stormer-Verlet (kick-drift-kick) integration of the same second-order
/// system, second-order accurate against evolve. The undamped scheme is
/// stable only for dt * max omega <= 2; violating that is a ConfigError, not
/// a silent blow-up. The stencil argument is consulted only for
/// RealSpaceStencil and must describe the same operator as the table.
EvolutionState leapfrog_evolve(const SymbolTable& table, const StencilKernel* stencil,
                               LeapfrogForce force, const EvolutionState& state,
                               double t_final, int n_steps);

} // namespace peridyn
