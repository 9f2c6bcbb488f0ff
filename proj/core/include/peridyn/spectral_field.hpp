#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "peridyn/grid.hpp"

namespace peridyn {

/// Real vector field sampled on the periodic lattice, one flattened row-major
/// array per component (a field u: R^d -> R^d has d components).
struct RealField {
    GridSpec grid;
    std::vector<std::vector<double>> comps;

    static RealField zeros(const GridSpec& grid);
};

/// Fourier coefficients of a real vector field, Hermitian-symmetric per
/// component: coeff(-k) = conj(coeff(k)), Nyquist rows real.
struct SpectralField {
    GridSpec grid;
    std::vector<std::vector<std::complex<double>>> comps;

    static SpectralField zeros(const GridSpec& grid);

    double max_abs() const;
};

/// Displacement/velocity pair in spectral form at one time instant.
struct EvolutionState {
    SpectralField u_hat;
    SpectralField v_hat;
    double time = 0.0;
};

/// Forward transform with the unitary-like convention
///   coeff_k = h^d (2 pi)^(-d/2) sum_x u(x) e^(-i x . xi_k),
/// so that sum_x |u|^2 h^d = sum_k |coeff|^2 (2 pi / L)^d (discrete Parseval).
/// Hermitian symmetry is checked to 1e-13 (relative to the largest
/// coefficient) and then enforced exactly.
SpectralField dft_forward(const RealField& field);

/// Inverse of dft_forward. Broken Hermitian symmetry raises InvariantError;
/// the imaginary residue of the back-transform must stay below 1e-12
/// relative, and is then discarded.
RealField dft_inverse(const SpectralField& field);

/// Largest |coeff(k) - conj(coeff(-k))| over all components and modes.
double hermitian_residual(const SpectralField& field);

/// Symmetrize coefficients pairwise and zero the imaginary part of
/// self-conjugate modes.
void enforce_hermitian(SpectralField& field);

/// Dual measure of one lattice cell in frequency space, (2 pi / L)^d. All
/// spectral norm sums carry this weight.
double dual_measure(const GridSpec& grid);

/// Hermitian-symmetric field with independent Gaussian coefficients on the
/// modes with |xi_k| <= radius and zeros elsewhere; deterministic for a given
/// seed. Nyquist rows are never populated. radius above the Nyquist radius is
/// a ConfigError.
SpectralField band_limited_random(const GridSpec& grid, double radius, std::uint64_t seed);

/// Deterministic smooth band profile: coefficient phi(|xi|/radius) on modes
/// with 0 < |xi| <= radius, phi(t) = t^2 (1 - t^2)^2. Self-similar across
/// radius choices, which makes shell-moment ratios scale cleanly.
SpectralField band_profile(const GridSpec& grid, double radius);

/// CSV rows: component, axis indices, re, im.
void write_field_csv(const SpectralField& field, std::ostream& out);

/// Raw little-endian snapshot with a 32-byte header (magic, d, n, L).
void write_field_binary(const SpectralField& field, std::ostream& out);
SpectralField read_field_binary(std::istream& in);

} // namespace peridyn
