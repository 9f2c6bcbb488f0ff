#include "peridyn/stencil.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "peridyn/errors.hpp"

namespace peridyn {

double StencilKernel::total_weight() const {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

StencilKernel build_stencil(const ModelParams& params, const GridSpec& grid) {
    params.validate();
    if (params.dim != grid.dim()) {
        throw ConfigError("build_stencil: model and grid dimensions differ");
    }
    const double h = grid.mesh();
    const double delta = params.delta;
    if (delta >= 0.5 * grid.box_length()) {
        throw ConfigError("build_stencil: horizon must be smaller than half the box");
    }
    if (delta < h) {
        throw ConfigError("build_stencil: horizon below the mesh size gives an empty stencil");
    }

    StencilKernel kernel{params, grid, {}, {}};
    const int reach = static_cast<int>(std::floor(delta / h));
    const double prefactor = params.kappa * std::pow(delta, -2.0 * (1.0 - params.alpha)) *
                             std::pow(h, params.dim);
    const int lo = -reach;
    const int hi = reach;
    std::array<int, 3> j{0, 0, 0};
    auto consider = [&](const std::array<int, 3>& off) {
        double norm_sq = 0.0;
        for (int a = 0; a < params.dim; ++a) norm_sq += static_cast<double>(off[a]) * off[a];
        if (norm_sq == 0.0) return;
        const double norm = h * std::sqrt(norm_sq);
        if (norm >= delta) return; // chi vanishes from the horizon on
        const double chi = cutoff_eval(params.cutoff, norm / delta);
        if (chi == 0.0) return;
        const double w = prefactor * chi * std::pow(norm, -(params.dim + 2.0 * params.alpha));
        kernel.offsets.push_back(off);
        kernel.weights.push_back(w);
    };
    if (params.dim == 1) {
        for (j[0] = lo; j[0] <= hi; ++j[0]) consider(j);
    } else if (params.dim == 2) {
        for (j[0] = lo; j[0] <= hi; ++j[0])
            for (j[1] = lo; j[1] <= hi; ++j[1]) consider(j);
    } else {
        for (j[0] = lo; j[0] <= hi; ++j[0])
            for (j[1] = lo; j[1] <= hi; ++j[1])
                for (j[2] = lo; j[2] <= hi; ++j[2]) consider(j);
    }
    if (kernel.offsets.empty()) {
        throw ConfigError("build_stencil: no lattice offsets inside the horizon");
    }
    return kernel;
}

RealField apply_operator(const StencilKernel& kernel, const RealField& field) {
    if (!(field.grid == kernel.grid)) {
        throw ConfigError("apply_operator: field grid does not match stencil grid");
    }
    const GridSpec& grid = kernel.grid;
    const int n = grid.n();
    RealField out = RealField::zeros(grid);
    for (int c = 0; c < grid.dim(); ++c) {
        if (field.comps[c].size() != grid.size()) {
            throw ConfigError("apply_operator: sample array shape does not match grid");
        }
        const std::vector<double>& u = field.comps[c];
        std::vector<double>& result = out.comps[c];
        for (std::size_t flat = 0; flat < grid.size(); ++flat) {
            const std::array<int, 3> x = grid.unflatten(flat);
            double acc = 0.0;
            const double center = u[flat];
            for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
                const std::array<int, 3>& off = kernel.offsets[s];
                std::array<int, 3> plus{0, 0, 0};
                for (int a = 0; a < grid.dim(); ++a) {
                    plus[a] = x[a] + off[a];
                    plus[a] %= n;
                    if (plus[a] < 0) plus[a] += n;
                }
                acc += kernel.weights[s] * (u[grid.flatten(plus)] - center);
            }
            // The stencil is negation-symmetric, so summing w_j (u(x+y_j) - u(x))
            // over all offsets equals the half-weighted second difference.
            result[flat] = acc;
        }
    }
    return out;
}

double discrete_symbol(const StencilKernel& kernel, const std::array<int, 3>& mode) {
    const double dxi = kernel.grid.dxi();
    const double h = kernel.grid.mesh();
    double sum = 0.0;
    for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
        double phase = 0.0;
        for (int a = 0; a < kernel.grid.dim(); ++a) {
            phase += h * kernel.offsets[s][a] * dxi * mode[a];
        }
        sum += kernel.weights[s] * (1.0 - std::cos(phase));
    }
    return sum;
}

double discrete_symbol(const StencilKernel& kernel, const std::array<double, 3>& xi) {
    std::array<int, 3> mode{0, 0, 0};
    for (int a = 0; a < kernel.grid.dim(); ++a) {
        const double k = xi[a] / kernel.grid.dxi();
        const double rounded = std::round(k);
        if (std::abs(k - rounded) > 1e-12 * std::max(1.0, std::abs(k))) {
            throw DomainError("discrete_symbol: frequency is not on the grid lattice");
        }
        mode[a] = static_cast<int>(rounded);
    }
    return discrete_symbol(kernel, mode);
}

double nonlocal_energy_direct(const StencilKernel& kernel, const RealField& field) {
    if (!(field.grid == kernel.grid)) {
        throw ConfigError("nonlocal_energy_direct: field grid does not match stencil grid");
    }
    const GridSpec& grid = kernel.grid;
    const int n = grid.n();
    const double cell = std::pow(grid.mesh(), grid.dim());
    double energy = 0.0;
    for (int c = 0; c < grid.dim(); ++c) {
        const std::vector<double>& u = field.comps[c];
        for (std::size_t flat = 0; flat < grid.size(); ++flat) {
            const std::array<int, 3> x = grid.unflatten(flat);
            const double center = u[flat];
            for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
                const std::array<int, 3>& off = kernel.offsets[s];
                std::array<int, 3> minus{0, 0, 0};
                for (int a = 0; a < grid.dim(); ++a) {
                    minus[a] = x[a] - off[a];
                    minus[a] %= n;
                    if (minus[a] < 0) minus[a] += n;
                }
                const double diff = center - u[grid.flatten(minus)];
                energy += kernel.weights[s] * diff * diff;
            }
        }
    }
    return 0.5 * cell * energy;
}

void write_stencil_csv(const StencilKernel& kernel, std::ostream& out) {
    const char* names[3] = {"i", "j", "k"};
    for (int a = 0; a < kernel.grid.dim(); ++a) out << names[a] << ',';
    out << "weight\n";
    char buffer[64];
    for (std::size_t s = 0; s < kernel.offsets.size(); ++s) {
        for (int a = 0; a < kernel.grid.dim(); ++a) out << kernel.offsets[s][a] << ',';
        std::snprintf(buffer, sizeof(buffer), "%.17g\n", kernel.weights[s]);
        out << buffer;
    }
}

} // namespace peridyn
