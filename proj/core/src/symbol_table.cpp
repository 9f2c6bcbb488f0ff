#include "peridyn/symbol_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "peridyn/errors.hpp"

namespace peridyn {

std::string symbol_choice_name(SymbolChoice choice) {
    return choice == SymbolChoice::Continuum ? "continuum" : "discrete";
}

SymbolChoice symbol_choice_from_name(const std::string& name) {
    if (name == "continuum") return SymbolChoice::Continuum;
    if (name == "discrete") return SymbolChoice::Discrete;
    throw ConfigError("unknown symbol choice '" + name + "' (expected continuum or discrete)");
}

double SymbolTable::max_omega() const {
    double m = 0.0;
    for (double w : omega) m = std::max(m, w);
    return m;
}

SymbolTable make_continuum_symbol_table(const GridSpec& grid, const ModelParams& params,
                                        double rel_tol) {
    if (params.dim != grid.dim()) {
        throw ConfigError("make_continuum_symbol_table: model and grid dimensions differ");
    }
    SymbolTable table{grid, std::vector<double>(grid.size(), 0.0)};
    std::map<std::int64_t, double> by_shell;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::int64_t shell = grid.freq_norm_sq_int(i);
        auto it = by_shell.find(shell);
        if (it == by_shell.end()) {
            const double r = grid.dxi() * std::sqrt(static_cast<double>(shell));
            it = by_shell.emplace(shell, omega_delta(params, r, rel_tol)).first;
        }
        table.omega[i] = it->second;
    }
    return table;
}

SymbolTable make_discrete_symbol_table(const StencilKernel& kernel) {
    const GridSpec& grid = kernel.grid;
    SymbolTable table{grid, std::vector<double>(grid.size(), 0.0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::array<int, 3> mode = grid.freq_vector(i);
        table.omega[i] = std::sqrt(std::max(0.0, discrete_symbol(kernel, mode)));
    }
    return table;
}

SymbolTable make_wave_symbol_table(const GridSpec& grid, double gamma) {
    if (!(gamma > 0.0)) {
        throw ConfigError("make_wave_symbol_table: wave speed must be positive");
    }
    SymbolTable table{grid, std::vector<double>(grid.size(), 0.0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        table.omega[i] = gamma * grid.freq_norm(i);
    }
    return table;
}

} // namespace peridyn
