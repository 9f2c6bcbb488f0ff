#pragma once

#include "peridyn/spectral_field.hpp"
#include "peridyn/symbol_table.hpp"

namespace peridyn {

/// Fourier-weighted Sobolev norm of any real order s:
///   ( sum_k (1 + |xi_k|^2)^s |coeff|^2 dual_measure )^(1/2),
/// summed over components. s = 0 recovers the discrete L^2 norm of the
/// samples through Parseval.
double h_s_norm(const SpectralField& field, double s);

/// Bond-energy seminorm ( sum_k omega(xi_k)^2 |coeff|^2 dual_measure )^(1/2).
double w_delta_seminorm(const SpectralField& field, const SymbolTable& table);

/// sum_k |xi_k|^2 |coeff|^2 dual_measure: squared L^2 norm of the spectral
/// gradient.
double gradient_l2_squared(const SpectralField& field);

enum class EnergyKind { Peridynamic, Wave };

struct EnergyReport {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
    EnergyKind kind = EnergyKind::Peridynamic;
    double time = 0.0;
};

/// 1/2 ||v||_L2^2 + 1/2 [u]^2 with the bond seminorm from the table.
EnergyReport energy_peridynamic(const EvolutionState& state, const SymbolTable& table);

/// 1/2 ||v||_L2^2 + gamma^2/2 ||grad u||_L2^2.
EnergyReport energy_wave(const EvolutionState& state, double gamma);

struct GapPair {
    double u_gap = 0.0; // H^s distance of displacements
    double v_gap = 0.0; // H^(s-1) distance of velocities
};

/// Sobolev distance between two states sharing a grid and a time instant.
GapPair solution_gap(const EvolutionState& a, const EvolutionState& b, double s);

} // namespace peridyn
