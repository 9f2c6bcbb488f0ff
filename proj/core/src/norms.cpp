#include "peridyn/norms.hpp"

#include <cmath>

#include "peridyn/errors.hpp"

namespace peridyn {

double h_s_norm(const SpectralField& field, double s) {
    const double measure = dual_measure(field.grid);
    double sum = 0.0;
    for (const auto& comp : field.comps) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const double r = field.grid.freq_norm(i);
            const double weight = std::pow(1.0 + r * r, s);
            sum += weight * std::norm(comp[i]);
        }
    }
    return std::sqrt(sum * measure);
}

double w_delta_seminorm(const SpectralField& field, const SymbolTable& table) {
    if (!(field.grid == table.grid)) {
        throw ConfigError("w_delta_seminorm: field grid does not match symbol table grid");
    }
    const double measure = dual_measure(field.grid);
    double sum = 0.0;
    for (const auto& comp : field.comps) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            sum += table.omega[i] * table.omega[i] * std::norm(comp[i]);
        }
    }
    return std::sqrt(sum * measure);
}

double gradient_l2_squared(const SpectralField& field) {
    const double measure = dual_measure(field.grid);
    double sum = 0.0;
    for (const auto& comp : field.comps) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const double r = field.grid.freq_norm(i);
            sum += r * r * std::norm(comp[i]);
        }
    }
    return sum * measure;
}

EnergyReport energy_peridynamic(const EvolutionState& state, const SymbolTable& table) {
    EnergyReport report;
    report.kind = EnergyKind::Peridynamic;
    report.time = state.time;
    const double v_norm = h_s_norm(state.v_hat, 0.0);
    const double seminorm = w_delta_seminorm(state.u_hat, table);
    report.kinetic = 0.5 * v_norm * v_norm;
    report.potential = 0.5 * seminorm * seminorm;
    report.total = report.kinetic + report.potential;
    return report;
}

EnergyReport energy_wave(const EvolutionState& state, double gamma) {
    EnergyReport report;
    report.kind = EnergyKind::Wave;
    report.time = state.time;
    const double v_norm = h_s_norm(state.v_hat, 0.0);
    report.kinetic = 0.5 * v_norm * v_norm;
    report.potential = 0.5 * gamma * gamma * gradient_l2_squared(state.u_hat);
    report.total = report.kinetic + report.potential;
    return report;
}

GapPair solution_gap(const EvolutionState& a, const EvolutionState& b, double s) {
    if (!(a.u_hat.grid == b.u_hat.grid)) {
        throw InvariantError("solution_gap: states live on different grids");
    }
    if (std::abs(a.time - b.time) > 1e-12 * std::max(1.0, std::abs(a.time))) {
        throw InvariantError("solution_gap: states are at different times");
    }
    SpectralField du = SpectralField::zeros(a.u_hat.grid);
    SpectralField dv = SpectralField::zeros(a.u_hat.grid);
    for (int c = 0; c < a.u_hat.grid.dim(); ++c) {
        for (std::size_t i = 0; i < du.comps[c].size(); ++i) {
            du.comps[c][i] = a.u_hat.comps[c][i] - b.u_hat.comps[c][i];
            dv.comps[c][i] = a.v_hat.comps[c][i] - b.v_hat.comps[c][i];
        }
    }
    return GapPair{h_s_norm(du, s), h_s_norm(dv, s - 1.0)};
}

} // namespace peridyn
