#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "peridyn/dispersion.hpp"
#include "peridyn/errors.hpp"
#include "peridyn/norms.hpp"
#include "peridyn/spectral_field.hpp"
#include "peridyn/stencil.hpp"
#include "peridyn/symbol_table.hpp"

using namespace peridyn;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams model_1d(double delta, double alpha = 0.5) {
    ModelParams params;
    params.dim = 1;
    params.delta = delta;
    params.alpha = alpha;
    params.kappa = 1.0;
    params.cutoff.kind = CutoffKind::Indicator;
    return params;
}

RealField random_real(const GridSpec& grid, std::uint64_t seed) {
    RealField field = RealField::zeros(grid);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (auto& comp : field.comps) {
        for (double& v : comp) v = uniform(rng);
    }
    return field;
}

double dot_l2(const RealField& a, const RealField& b) {
    double sum = 0.0;
    for (int c = 0; c < a.grid.dim(); ++c) {
        for (std::size_t i = 0; i < a.comps[c].size(); ++i) {
            sum += a.comps[c][i] * b.comps[c][i];
        }
    }
    return sum * std::pow(a.grid.mesh(), a.grid.dim());
}

} // namespace

TEST_CASE("stencil enumeration at delta = 2.5 h") {
    GridSpec grid(1, 8, 8.0); // h = 1
    ModelParams params = model_1d(2.5);
    StencilKernel kernel = build_stencil(params, grid);
    REQUIRE(kernel.offsets.size() == 4);

    // w(y) = kappa delta^-1 |y|^-2 h for alpha = 1/2.
    for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
        const double y = std::abs(static_cast<double>(kernel.offsets[s][0]));
        CHECK((y == 1.0 || y == 2.0));
        CHECK(kernel.weights[s] == doctest::Approx(1.0 / 2.5 / (y * y)).epsilon(1e-15));
    }

    // Negation symmetry with equal weights.
    for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
        bool found = false;
        for (std::size_t t = 0; t < kernel.offsets.size(); ++t) {
            if (kernel.offsets[t][0] == -kernel.offsets[s][0]) {
                found = true;
                CHECK(kernel.weights[t] == kernel.weights[s]);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("stencil preconditions") {
    GridSpec grid(1, 16, 8.0);
    CHECK_THROWS_AS(build_stencil(model_1d(4.0), grid), ConfigError);  // horizon >= half box
    CHECK_THROWS_AS(build_stencil(model_1d(0.25), grid), ConfigError); // below mesh (h = 0.5)
}

TEST_CASE("total weight scales as 1/delta^2 at fixed delta/h") {
    // delta/h = 8 throughout: the lattice sum in horizon units is identical,
    // so delta^2 * total weight is one constant.
    double reference = 0.0;
    for (double delta : {0.1, 0.2, 0.4}) {
        GridSpec grid(1, 64, 8.0 * delta); // h = delta/8
        StencilKernel kernel = build_stencil(model_1d(delta), grid);
        const double scaled = delta * delta * kernel.total_weight();
        if (reference == 0.0) {
            reference = scaled;
        } else {
            CHECK(scaled == doctest::Approx(reference).epsilon(1e-12));
        }
    }
    CHECK(reference > 0.0);
}

TEST_CASE("constant fields are annihilated exactly") {
    GridSpec grid(1, 64, 2.0 * kPi);
    StencilKernel kernel = build_stencil(model_1d(0.5), grid);
    RealField field = RealField::zeros(grid);
    for (double& v : field.comps[0]) v = 3.14159;
    RealField out = apply_operator(kernel, field);
    for (double v : out.comps[0]) CHECK(v == 0.0);
    CHECK(nonlocal_energy_direct(kernel, field) == 0.0);
}

TEST_CASE("plane waves are eigenvectors with the discrete symbol as eigenvalue") {
    GridSpec grid(1, 128, 2.0 * kPi);
    StencilKernel kernel = build_stencil(model_1d(0.4), grid);
    const int mode = 9;
    // x_i = i h, mode frequency xi = mode * dxi.
    RealField field = RealField::zeros(grid);
    for (int i = 0; i < grid.n(); ++i) {
        field.comps[0][i] = std::cos(mode * grid.dxi() * grid.mesh() * i);
    }
    const double symbol = discrete_symbol(kernel, std::array<int, 3>{mode, 0, 0});
    RealField out = apply_operator(kernel, field);
    double err = 0.0;
    for (int i = 0; i < grid.n(); ++i) {
        err = std::max(err, std::abs(out.comps[0][i] + symbol * field.comps[0][i]));
    }
    CHECK(err < 1e-12 * symbol);

    CHECK(discrete_symbol(kernel, std::array<int, 3>{0, 0, 0}) == 0.0);
    CHECK_THROWS_AS(discrete_symbol(kernel, std::array<double, 3>{0.5 * grid.dxi(), 0.0, 0.0}),
                    DomainError);
    CHECK(discrete_symbol(kernel, std::array<double, 3>{mode * grid.dxi(), 0.0, 0.0}) ==
          doctest::Approx(symbol).epsilon(1e-15));
}

TEST_CASE("smooth bump: operator approaches the scaled Laplacian as the horizon shrinks") {
    // Fixed physical bump on a fixed box; n scales so delta/h = 8 at every
    // horizon. The comparison target is the spectral Laplacian times gamma^2
    // applied to the same samples.
    const double gamma = gamma_constant(model_1d(1.0), 1e-10);
    const double box = 6.4;
    const double sigma = 0.35;
    double previous_err = 0.0;
    bool first = true;
    const std::pair<double, int> levels[3] = {{0.2, 256}, {0.1, 512}, {0.05, 1024}};
    for (const auto& [delta, n] : levels) {
        GridSpec grid(1, n, box);
        StencilKernel kernel = build_stencil(model_1d(delta), grid);
        RealField bump = RealField::zeros(grid);
        for (int i = 0; i < grid.n(); ++i) {
            const double x = grid.mesh() * i - 0.5 * box;
            bump.comps[0][i] = std::exp(-0.5 * x * x / (sigma * sigma));
        }
        SpectralField hat = dft_forward(bump);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double xi = grid.freq_norm(i);
            hat.comps[0][i] *= -gamma * gamma * xi * xi;
        }
        RealField laplacian = dft_inverse(hat);
        RealField nonlocal = apply_operator(kernel, bump);
        double err = 0.0;
        for (int i = 0; i < grid.n(); ++i) {
            err = std::max(err, std::abs(nonlocal.comps[0][i] - laplacian.comps[0][i]));
        }
        if (!first) CHECK(err < previous_err);
        first = false;
        previous_err = err;
    }
}

TEST_CASE("self-adjointness and negative semidefiniteness in the discrete pairing") {
    GridSpec grid(1, 128, 2.0 * kPi);
    StencilKernel kernel = build_stencil(model_1d(0.3), grid);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RealField u = random_real(grid, 100 + seed);
        RealField v = random_real(grid, 200 + seed);
        const RealField ku = apply_operator(kernel, u);
        const RealField kv = apply_operator(kernel, v);
        const double forward = dot_l2(ku, v);
        const double backward = dot_l2(u, kv);
        CHECK(std::abs(forward - backward) <= 1e-12 * std::max(std::abs(forward), 1.0));
        CHECK(dot_l2(ku, u) <= 0.0);
    }
}

TEST_CASE("bond energy equals both the operator pairing and the spectral sum") {
    for (int dim : {1, 2}) {
        const GridSpec grid(dim, dim == 1 ? 128 : 16, 6.4);
        ModelParams params = model_1d(dim == 1 ? 0.4 : 1.6);
        params.dim = dim;
        StencilKernel kernel = build_stencil(params, grid);
        RealField u = random_real(grid, 5 + dim);

        const double energy = nonlocal_energy_direct(kernel, u);
        const double pairing = -dot_l2(apply_operator(kernel, u), u);
        CHECK(energy == doctest::Approx(pairing).epsilon(1e-10));

        const SymbolTable table = make_discrete_symbol_table(kernel);
        const double seminorm = w_delta_seminorm(dft_forward(u), table);
        CHECK(energy == doctest::Approx(seminorm * seminorm).epsilon(1e-10));
    }
}

TEST_CASE("transform of the operator action is the negative symbol multiplier") {
    for (int dim : {1, 2}) {
        const GridSpec grid(dim, dim == 1 ? 256 : 32, 6.4);
        ModelParams params = model_1d(dim == 1 ? 0.2 : 1.6);
        params.dim = dim;
        StencilKernel kernel = build_stencil(params, grid);
        const SymbolTable table = make_discrete_symbol_table(kernel);
        RealField u = random_real(grid, 31 * dim);
        const SpectralField f = dft_forward(u);
        const SpectralField kf = dft_forward(apply_operator(kernel, u));
        double num = 0.0, den = 0.0;
        for (int c = 0; c < dim; ++c) {
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const std::complex<double> expected =
                    -table.omega[i] * table.omega[i] * f.comps[c][i];
                num = std::max(num, std::abs(kf.comps[c][i] - expected));
                den = std::max(den, std::abs(expected));
            }
        }
        CHECK(num <= 1e-12 * den);
    }
}

TEST_CASE("stencil CSV dump") {
    GridSpec grid(1, 8, 8.0);
    StencilKernel kernel = build_stencil(model_1d(2.5), grid);
    std::ostringstream csv;
    write_stencil_csv(kernel, csv);
    CHECK(csv.str().rfind("i,weight\n", 0) == 0);
}

TEST_CASE("three-dimensional smoke: transform round trip and the symbol identity") {
    GridSpec grid(3, 8, 6.4);
    ModelParams params = model_1d(2.2);
    params.dim = 3;
    StencilKernel kernel = build_stencil(params, grid);
    const SymbolTable table = make_discrete_symbol_table(kernel);
    RealField u = random_real(grid, 777);

    const SpectralField hat = dft_forward(u);
    const RealField back = dft_inverse(hat);
    double round_trip = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            round_trip = std::max(round_trip, std::abs(back.comps[c][i] - u.comps[c][i]));
        }
    }
    CHECK(round_trip < 1e-12);

    const SpectralField kf = dft_forward(apply_operator(kernel, u));
    double num = 0.0, den = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const std::complex<double> expected = -table.omega[i] * table.omega[i] * hat.comps[c][i];
            num = std::max(num, std::abs(kf.comps[c][i] - expected));
            den = std::max(den, std::abs(expected));
        }
    }
    CHECK(num <= 1e-12 * den);

    const double energy = nonlocal_energy_direct(kernel, u);
    CHECK(energy == doctest::Approx(-dot_l2(apply_operator(kernel, u), u)).epsilon(1e-10));

    // Continuum symbol lattice table in three dimensions stays finite and even.
    const SymbolTable continuum = make_continuum_symbol_table(grid, params, 1e-7);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(continuum.omega[i] >= 0.0);
        CHECK(continuum.omega[i] == continuum.omega[grid.conjugate_index(i)]);
    }
}
