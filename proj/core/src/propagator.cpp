#include "peridyn/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

void require_same_grid(const SymbolTable& table, const EvolutionState& state) {
    if (!(state.u_hat.grid == table.grid) || !(state.v_hat.grid == table.grid)) {
        throw ConfigError("propagator: state grid does not match symbol table grid");
    }
}

void require_hermitian(const EvolutionState& state) {
    const double scale = std::max({1.0, state.u_hat.max_abs(), state.v_hat.max_abs()});
    if (hermitian_residual(state.u_hat) > 1e-12 * scale ||
        hermitian_residual(state.v_hat) > 1e-12 * scale) {
        throw InvariantError("propagator: state is not Hermitian-symmetric");
    }
}

} // namespace

double sin_phase_over_omega(double omega, double t) {
    if (omega == 0.0) return t;
    const double phase = omega * t;
    if (std::abs(phase) < kPhaseSeriesThreshold) {
        const double p2 = phase * phase;
        return t * (1.0 - p2 / 6.0 + p2 * p2 / 120.0);
    }
    return std::sin(phase) / omega;
}

EvolutionState evolve(const SymbolTable& table, const EvolutionState& state, double t) {
    if (t < 0.0) throw DomainError("evolve: time must be nonnegative");
    require_same_grid(table, state);
    require_hermitian(state);

    EvolutionState out{SpectralField::zeros(table.grid), SpectralField::zeros(table.grid),
                       state.time + t};
    for (int c = 0; c < table.grid.dim(); ++c) {
        const auto& u0 = state.u_hat.comps[c];
        const auto& v0 = state.v_hat.comps[c];
        auto& u1 = out.u_hat.comps[c];
        auto& v1 = out.v_hat.comps[c];
        for (std::size_t i = 0; i < u0.size(); ++i) {
            const double omega = table.omega[i];
            if (omega == 0.0) {
                u1[i] = u0[i] + t * v0[i];
                v1[i] = v0[i];
                continue;
            }
            const double c_t = std::cos(omega * t);
            const double s_over = sin_phase_over_omega(omega, t);
            u1[i] = c_t * u0[i] + s_over * v0[i];
            v1[i] = -omega * std::sin(omega * t) * u0[i] + c_t * v0[i];
        }
    }
    return out;
}

double flow_composition_check(const SymbolTable& table, const EvolutionState& state,
                              double t, double s) {
    if (t < 0.0 || s < 0.0) throw DomainError("flow_composition_check: times must be nonnegative");
    const EvolutionState direct = evolve(table, state, t + s);
    const EvolutionState stepped = evolve(table, evolve(table, state, t), s);
    const double scale = std::max({1e-300, direct.u_hat.max_abs(), direct.v_hat.max_abs()});
    double deviation = 0.0;
    for (int c = 0; c < table.grid.dim(); ++c) {
        for (std::size_t i = 0; i < direct.u_hat.comps[c].size(); ++i) {
            deviation = std::max(deviation,
                                 std::abs(direct.u_hat.comps[c][i] - stepped.u_hat.comps[c][i]));
            deviation = std::max(deviation,
                                 std::abs(direct.v_hat.comps[c][i] - stepped.v_hat.comps[c][i]));
        }
    }
    return deviation / scale;
}

EvolutionState leapfrog_evolve(const SymbolTable& table, const StencilKernel* stencil,
                               LeapfrogForce force, const EvolutionState& state,
                               double t_final, int n_steps) {
    if (t_final < 0.0) throw DomainError("leapfrog_evolve: time must be nonnegative");
    if (n_steps < 1) throw ConfigError("leapfrog_evolve: need at least one step");
    if (force == LeapfrogForce::RealSpaceStencil && stencil == nullptr) {
        throw ConfigError("leapfrog_evolve: real-space force requires a stencil");
    }
    require_same_grid(table, state);
    require_hermitian(state);

    const double dt = t_final / n_steps;
    if (dt * table.max_omega() > 2.0) {
        throw ConfigError("leapfrog_evolve: stability bound violated, dt * max_omega > 2");
    }

    auto acceleration = [&](const SpectralField& u) {
        SpectralField a = SpectralField::zeros(table.grid);
        if (force == LeapfrogForce::SpectralMultiplier) {
            for (int c = 0; c < table.grid.dim(); ++c) {
                for (std::size_t i = 0; i < u.comps[c].size(); ++i) {
                    const double omega = table.omega[i];
                    a.comps[c][i] = -omega * omega * u.comps[c][i];
                }
            }
        } else {
            a = dft_forward(apply_operator(*stencil, dft_inverse(u)));
        }
        return a;
    };

    SpectralField u = state.u_hat;
    SpectralField v = state.v_hat;
    SpectralField a = acceleration(u);
    for (int step = 0; step < n_steps; ++step) {
        for (int c = 0; c < table.grid.dim(); ++c) {
            for (std::size_t i = 0; i < u.comps[c].size(); ++i) {
                v.comps[c][i] += 0.5 * dt * a.comps[c][i];
                u.comps[c][i] += dt * v.comps[c][i];
            }
        }
        a = acceleration(u);
        for (int c = 0; c < table.grid.dim(); ++c) {
            for (std::size_t i = 0; i < u.comps[c].size(); ++i) {
                v.comps[c][i] += 0.5 * dt * a.comps[c][i];
            }
        }
    }
    return EvolutionState{std::move(u), std::move(v), state.time + t_final};
}

} // namespace peridyn
