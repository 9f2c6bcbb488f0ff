#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "peridyn/dispersion.hpp"
#include "peridyn/errors.hpp"
#include "peridyn/norms.hpp"
#include "peridyn/propagator.hpp"
#include "peridyn/spectral_field.hpp"
#include "peridyn/stencil.hpp"
#include "peridyn/symbol_table.hpp"

using namespace peridyn;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams model_1d(double delta) {
    ModelParams params;
    params.dim = 1;
    params.delta = delta;
    params.alpha = 0.5;
    params.kappa = 1.0;
    params.cutoff.kind = CutoffKind::Indicator;
    return params;
}

EvolutionState random_state(const GridSpec& grid, double radius, std::uint64_t seed) {
    return EvolutionState{band_limited_random(grid, radius, seed),
                          band_limited_random(grid, radius, seed + 1), 0.0};
}

double max_state_diff(const EvolutionState& a, const EvolutionState& b) {
    double m = 0.0;
    for (int c = 0; c < a.u_hat.grid.dim(); ++c) {
        for (std::size_t i = 0; i < a.u_hat.comps[c].size(); ++i) {
            m = std::max(m, std::abs(a.u_hat.comps[c][i] - b.u_hat.comps[c][i]));
            m = std::max(m, std::abs(a.v_hat.comps[c][i] - b.v_hat.comps[c][i]));
        }
    }
    return m;
}

} // namespace

TEST_CASE("guarded sin(omega t)/omega") {
    CHECK(sin_phase_over_omega(0.0, 2.5) == 2.5);
    for (double omega : {1e-9, 1e-5, 0.3, 40.0}) {
        for (double t : {1e-7, 0.9, 3.0}) {
            const long double exact =
                std::sin(static_cast<long double>(omega) * t) / static_cast<long double>(omega);
            CHECK(sin_phase_over_omega(omega, t) ==
                  doctest::Approx(static_cast<double>(exact)).epsilon(5e-15));
        }
    }
}

TEST_CASE("zero time is the identity") {
    GridSpec grid(1, 64, 64.0 * kPi);
    SymbolTable table = make_wave_symbol_table(grid, 1.0);
    EvolutionState state = random_state(grid, 0.4, 3);
    EvolutionState out = evolve(table, state, 0.0);
    CHECK(max_state_diff(out, state) == 0.0);
}

TEST_CASE("single mode oscillates with the tabulated frequency") {
    GridSpec grid(1, 64, 2.0 * kPi);
    const ModelParams params = model_1d(0.3);
    const SymbolTable table = make_continuum_symbol_table(grid, params, 1e-10);

    const std::size_t plus = 5;
    const std::size_t minus = grid.size() - 5;
    EvolutionState state{SpectralField::zeros(grid), SpectralField::zeros(grid), 0.0};
    state.u_hat.comps[0][plus] = {0.8, 0.1};
    state.u_hat.comps[0][minus] = {0.8, -0.1};

    const double omega = table.omega[plus];
    const double t = 0.73;
    EvolutionState out = evolve(table, state, t);
    CHECK(out.time == doctest::Approx(t));
    CHECK(out.u_hat.comps[0][plus] ==
          std::complex<double>{0.8 * std::cos(omega * t), 0.1 * std::cos(omega * t)});
    CHECK(out.v_hat.comps[0][plus].real() ==
          doctest::Approx(-omega * std::sin(omega * t) * 0.8).epsilon(1e-14));
    CHECK(hermitian_residual(out.u_hat) == 0.0);
    CHECK(hermitian_residual(out.v_hat) == 0.0);
}

TEST_CASE("zero mode drifts linearly in time") {
    GridSpec grid(1, 16, 2.0 * kPi);
    SymbolTable table = make_wave_symbol_table(grid, 2.0);
    EvolutionState state{SpectralField::zeros(grid), SpectralField::zeros(grid), 0.0};
    state.v_hat.comps[0][0] = {0.4, 0.0};
    EvolutionState out = evolve(table, state, 3.0);
    CHECK(out.u_hat.comps[0][0].real() == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(out.v_hat.comps[0][0].real() == 0.4);
}

TEST_CASE("flow composition is exact to rounding for both evolution laws") {
    GridSpec grid(1, 128, 128.0 * kPi);
    EvolutionState state = random_state(grid, 0.5, 17);

    const SymbolTable wave = make_wave_symbol_table(grid, 1.0);
    CHECK(flow_composition_check(wave, state, 0.0, 0.0) == 0.0);
    CHECK(flow_composition_check(wave, state, 0.3, 0.7) < 1e-11);

    const SymbolTable bond = make_continuum_symbol_table(grid, model_1d(0.1), 1e-10);
    CHECK(flow_composition_check(bond, state, 0.3, 0.7) < 1e-11);
}

TEST_CASE("evolution rejects bad inputs") {
    GridSpec grid(1, 16, 2.0 * kPi);
    SymbolTable table = make_wave_symbol_table(grid, 1.0);
    EvolutionState state{SpectralField::zeros(grid), SpectralField::zeros(grid), 0.0};
    CHECK_THROWS_AS(evolve(table, state, -1.0), DomainError);

    state.u_hat.comps[0][2] = {0.0, 1.0};
    state.u_hat.comps[0][grid.size() - 2] = {0.0, 1.0}; // conjugate sign broken
    CHECK_THROWS_AS(evolve(table, state, 1.0), InvariantError);
}

TEST_CASE("mode energy is conserved along both exact flows") {
    GridSpec grid(1, 128, 128.0 * kPi);
    const SymbolTable bond = make_continuum_symbol_table(grid, model_1d(0.1), 1e-10);
    const SymbolTable wave = make_wave_symbol_table(grid, 1.0);
    const EvolutionState state0 = random_state(grid, 0.5, 23);

    for (const SymbolTable* table : {&bond, &wave}) {
        std::vector<double> reference(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double omega = table->omega[i];
            reference[i] = std::norm(state0.v_hat.comps[0][i]) +
                           omega * omega * std::norm(state0.u_hat.comps[0][i]);
        }
        for (int k = 1; k <= 50; ++k) {
            const EvolutionState out = evolve(*table, state0, k * 0.02);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double omega = table->omega[i];
                const double value = std::norm(out.v_hat.comps[0][i]) +
                                     omega * omega * std::norm(out.u_hat.comps[0][i]);
                CHECK(std::abs(value - reference[i]) <= 1e-12 * std::max(reference[i], 1e-30));
            }
        }
    }
}

TEST_CASE("time reversal returns the initial data with negated velocity") {
    GridSpec grid(1, 128, 128.0 * kPi);
    const SymbolTable bond = make_continuum_symbol_table(grid, model_1d(0.05), 1e-10);
    const EvolutionState state0 = random_state(grid, 0.5, 29);

    EvolutionState forward = evolve(bond, state0, 1.7);
    for (auto& comp : forward.v_hat.comps) {
        for (auto& v : comp) v = -v;
    }
    forward.time = 0.0;
    EvolutionState back = evolve(bond, forward, 1.7);

    EvolutionState expected = state0;
    for (auto& comp : expected.v_hat.comps) {
        for (auto& v : comp) v = -v;
    }
    const double scale = std::max(state0.u_hat.max_abs(), state0.v_hat.max_abs());
    CHECK(max_state_diff(back, expected) < 1e-11 * scale);
}

TEST_CASE("leapfrog: one tiny step matches the quadratic truncation of the flow") {
    GridSpec grid(1, 16, 2.0 * kPi);
    SymbolTable table = make_wave_symbol_table(grid, 1.0);
    EvolutionState state{SpectralField::zeros(grid), SpectralField::zeros(grid), 0.0};
    state.u_hat.comps[0][1] = {1.0, 0.0};
    state.u_hat.comps[0][grid.size() - 1] = {1.0, 0.0};
    state.v_hat.comps[0][1] = {0.0, 0.2};
    state.v_hat.comps[0][grid.size() - 1] = {0.0, -0.2};

    const double dt = 1e-3;
    const double omega = table.omega[1];
    EvolutionState stepped = leapfrog_evolve(table, nullptr, LeapfrogForce::SpectralMultiplier,
                                             state, dt, 1);
    const std::complex<double> u_expected =
        state.u_hat.comps[0][1] * (1.0 - 0.5 * omega * omega * dt * dt) +
        dt * state.v_hat.comps[0][1];
    CHECK(std::abs(stepped.u_hat.comps[0][1] - u_expected) < std::pow(omega * dt, 3.0));
}

TEST_CASE("leapfrog error is second order against the exact flow") {
    GridSpec grid(1, 128, 6.4);
    ModelParams params = model_1d(0.5);
    StencilKernel kernel = build_stencil(params, GridSpec(1, 128, 6.4));
    const SymbolTable table = make_discrete_symbol_table(kernel);
    const EvolutionState state0 = random_state(grid, 0.5 * grid.nyquist_radius(), 37);
    const EvolutionState exact = evolve(table, state0, 1.0);

    double previous = 0.0;
    std::vector<int> steps{64, 128, 256};
    std::vector<double> errors;
    for (int n : steps) {
        const EvolutionState approx = leapfrog_evolve(table, nullptr,
                                                      LeapfrogForce::SpectralMultiplier, state0,
                                                      1.0, n);
        errors.push_back(max_state_diff(approx, exact));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double ratio = errors[i] / errors[i + 1];
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    (void)previous;
}

TEST_CASE("real-space and spectral leapfrog forces give the same trajectory") {
    GridSpec grid(1, 128, 6.4);
    ModelParams params = model_1d(0.5);
    StencilKernel kernel = build_stencil(params, grid);
    const SymbolTable table = make_discrete_symbol_table(kernel);
    const EvolutionState state0 = random_state(grid, 0.5 * grid.nyquist_radius(), 41);

    const EvolutionState spectral = leapfrog_evolve(table, nullptr,
                                                    LeapfrogForce::SpectralMultiplier, state0,
                                                    1.0, 200);
    const EvolutionState realspace = leapfrog_evolve(table, &kernel,
                                                     LeapfrogForce::RealSpaceStencil, state0,
                                                     1.0, 200);
    const double scale = std::max(spectral.u_hat.max_abs(), spectral.v_hat.max_abs());
    CHECK(max_state_diff(spectral, realspace) < 1e-11 * scale);
    CHECK(hermitian_residual(realspace.u_hat) < 1e-12 * scale);
    CHECK(hermitian_residual(realspace.v_hat) < 1e-12 * scale);
}

TEST_CASE("leapfrog refuses an unstable step size") {
    GridSpec grid(1, 128, 6.4);
    StencilKernel kernel = build_stencil(model_1d(0.5), grid);
    const SymbolTable table = make_discrete_symbol_table(kernel);
    const EvolutionState state0 = random_state(grid, 0.5 * grid.nyquist_radius(), 43);
    // One giant step: dt * max omega far above 2.
    CHECK_THROWS_AS(leapfrog_evolve(table, nullptr, LeapfrogForce::SpectralMultiplier, state0,
                                    100.0, 1),
                    ConfigError);
}
