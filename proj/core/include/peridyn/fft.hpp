#pragma once

#include <complex>
#include <vector>

#include "peridyn/grid.hpp"

namespace peridyn {

/// In-place radix-2 transform of a length-n (power of two) line; sign -1 is
/// the forward kernel sum_j a_j e^(-2 pi i jk/n), sign +1 its unnormalized
/// adjoint. Twiddles come from std::polar per stage so repeated use stays at
/// double-precision accuracy.
void fft_line(std::complex<double>* data, std::size_t n, int sign);

/// Unnormalized multi-axis transform of a flattened row-major lattice array.
void fft_lattice(std::vector<std::complex<double>>& data, const GridSpec& grid, int sign);

} // namespace peridyn
