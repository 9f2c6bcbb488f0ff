#include "peridyn/fft.hpp"

#include <cmath>
#include <numbers>

#include "peridyn/errors.hpp"

namespace peridyn {

void fft_line(std::complex<double>* data, std::size_t n, int sign) {
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len >> 1;
        for (std::size_t j = 0; j < half; ++j) {
            twiddle[j] = std::polar(1.0, angle * static_cast<double>(j));
        }
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> even = data[start + j];
                std::complex<double> odd = data[start + j + half] * twiddle[j];
                data[start + j] = even + odd;
                data[start + j + half] = even - odd;
            }
        }
    }
}

void fft_lattice(std::vector<std::complex<double>>& data, const GridSpec& grid, int sign) {
    const std::size_t n = static_cast<std::size_t>(grid.n());
    if (data.size() != grid.size()) {
        throw ConfigError("fft_lattice: array shape does not match grid");
    }
    std::vector<std::complex<double>> line(n);
    for (int axis = 0; axis < grid.dim(); ++axis) {
        std::size_t stride = 1;
        for (int a = axis + 1; a < grid.dim(); ++a) stride *= n;
        const std::size_t block = stride * n;
        for (std::size_t base = 0; base < data.size(); base += block) {
            for (std::size_t offset = 0; offset < stride; ++offset) {
                std::complex<double>* first = data.data() + base + offset;
                for (std::size_t j = 0; j < n; ++j) line[j] = first[j * stride];
                fft_line(line.data(), n, sign);
                for (std::size_t j = 0; j < n; ++j) first[j * stride] = line[j];
            }
        }
    }
}

} // namespace peridyn
