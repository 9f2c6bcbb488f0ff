#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "peridyn/grid.hpp"
#include "peridyn/model_params.hpp"
#include "peridyn/spectral_field.hpp"

namespace peridyn {

/// Lattice discretization of the nonlocal bond operator: every nonzero lattice
/// offset y_j inside the horizon ball carries the weight
///   w_j = kappa delta^(-2(1-alpha)) chi(|y_j|/delta) |y_j|^(-d-2alpha) h^d.
/// The offset list is symmetric under negation with equal weights; y = 0 is
/// excluded, which is what makes the principal value unnecessary on a lattice.
struct StencilKernel {
    ModelParams params;
    GridSpec grid;
    std::vector<std::array<int, 3>> offsets; // in lattice steps
    std::vector<double> weights;

    double total_weight() const;
};

/// Enumerates the horizon ball. Preconditions: delta < L/2 so a bond cannot
/// wrap onto itself (ConfigError), delta >= h so the stencil is nonempty
/// (ConfigError).
StencilKernel build_stencil(const ModelParams& params, const GridSpec& grid);

/// out(x) = 1/2 sum_j w_j (u(x+y_j) + u(x-y_j) - 2 u(x)), periodic wrap,
/// applied componentwise. Annihilates constants exactly.
RealField apply_operator(const StencilKernel& kernel, const RealField& field);

/// Exact eigenvalue of apply_operator on the plane-wave mode k (sign flipped):
///   sum_j w_j (1 - cos(y_j . xi_k)), nonnegative.
double discrete_symbol(const StencilKernel& kernel, const std::array<int, 3>& mode);

/// Same, for a frequency vector given in physical units; it must sit on the
/// grid's frequency lattice (DomainError otherwise).
double discrete_symbol(const StencilKernel& kernel, const std::array<double, 3>& xi);

/// Discrete bond energy
///   1/2 sum_x h^d sum_j w_j |u(x) - u(x - y_j)|^2,
/// which equals -<apply_operator(u), u> in the discrete L^2 pairing and the
/// spectral sum of discrete_symbol * |coeff|^2 under the Parseval convention.
double nonlocal_energy_direct(const StencilKernel& kernel, const RealField& field);

/// CSV rows: offset indices, weight.
void write_stencil_csv(const StencilKernel& kernel, std::ostream& out);

} // namespace peridyn
