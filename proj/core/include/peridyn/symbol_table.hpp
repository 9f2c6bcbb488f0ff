#pragma once

#include <string>
#include <vector>

#include "peridyn/dispersion.hpp"
#include "peridyn/grid.hpp"
#include "peridyn/stencil.hpp"

namespace peridyn {

enum class SymbolChoice {
    /// omega evaluated by the radial quadrature of the model kernel.
    Continuum,
    /// exact eigenvalues of the lattice stencil operator.
    Discrete,
};

std::string symbol_choice_name(SymbolChoice choice);
SymbolChoice symbol_choice_from_name(const std::string& name);

/// Per-mode frequency table omega(xi_k) >= 0 on a grid's frequency lattice.
/// Values are even in xi by construction (radial sources), so every mode-wise
/// multiplier built from the table preserves Hermitian symmetry.
struct SymbolTable {
    GridSpec grid;
    std::vector<double> omega;

    double max_omega() const;
};

/// Continuum dispersion sampled on the lattice. Radii repeat across modes, so
/// evaluations are memoized by the integer shell |k|^2.
SymbolTable make_continuum_symbol_table(const GridSpec& grid, const ModelParams& params,
                                        double rel_tol = 1e-9);

/// Square root of the stencil's discrete symbol per mode.
SymbolTable make_discrete_symbol_table(const StencilKernel& kernel);

/// Classical wave multiplier omega = gamma |xi|.
SymbolTable make_wave_symbol_table(const GridSpec& grid, double gamma);

} // namespace peridyn
