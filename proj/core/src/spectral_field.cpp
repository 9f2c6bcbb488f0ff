#include "peridyn/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>

#include "peridyn/errors.hpp"
#include "peridyn/fft.hpp"

namespace peridyn {

namespace {

double forward_scale(const GridSpec& grid) {
    const double h = grid.mesh();
    return std::pow(h, grid.dim()) * std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim());
}

double inverse_scale(const GridSpec& grid) {
    return dual_measure(grid) * std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim());
}

} // namespace

RealField RealField::zeros(const GridSpec& grid) {
    RealField f{grid, {}};
    f.comps.assign(grid.dim(), std::vector<double>(grid.size(), 0.0));
    return f;
}

SpectralField SpectralField::zeros(const GridSpec& grid) {
    SpectralField f{grid, {}};
    f.comps.assign(grid.dim(), std::vector<std::complex<double>>(grid.size(), {0.0, 0.0}));
    return f;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& comp : comps) {
        for (const auto& c : comp) m = std::max(m, std::abs(c));
    }
    return m;
}

double dual_measure(const GridSpec& grid) {
    return std::pow(grid.dxi(), grid.dim());
}

double hermitian_residual(const SpectralField& field) {
    double residual = 0.0;
    for (const auto& comp : field.comps) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const std::size_t j = field.grid.conjugate_index(i);
            residual = std::max(residual, std::abs(comp[i] - std::conj(comp[j])));
        }
    }
    return residual;
}

void enforce_hermitian(SpectralField& field) {
    for (auto& comp : field.comps) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const std::size_t j = field.grid.conjugate_index(i);
            if (i == j) {
                comp[i] = {comp[i].real(), 0.0};
            } else if (i < j) {
                const std::complex<double> sym = 0.5 * (comp[i] + std::conj(comp[j]));
                comp[i] = sym;
                comp[j] = std::conj(sym);
            }
        }
    }
}

SpectralField dft_forward(const RealField& field) {
    if (static_cast<int>(field.comps.size()) != field.grid.dim()) {
        throw ConfigError("dft_forward: component count does not match grid dimension");
    }
    SpectralField out = SpectralField::zeros(field.grid);
    const double scale = forward_scale(field.grid);
    for (int c = 0; c < field.grid.dim(); ++c) {
        if (field.comps[c].size() != field.grid.size()) {
            throw ConfigError("dft_forward: sample array shape does not match grid");
        }
        auto& data = out.comps[c];
        for (std::size_t i = 0; i < data.size(); ++i) data[i] = {field.comps[c][i], 0.0};
        fft_lattice(data, field.grid, -1);
        for (auto& v : data) v *= scale;
    }
    const double residual = hermitian_residual(out);
    if (residual > 1e-13 * std::max(1.0, out.max_abs())) {
        throw InvariantError("dft_forward: Hermitian residual above 1e-13");
    }
    enforce_hermitian(out);
    return out;
}

RealField dft_inverse(const SpectralField& field) {
    if (static_cast<int>(field.comps.size()) != field.grid.dim()) {
        throw ConfigError("dft_inverse: component count does not match grid dimension");
    }
    const double coeff_scale = std::max(1.0, field.max_abs());
    if (hermitian_residual(field) > 1e-12 * coeff_scale) {
        throw InvariantError("dft_inverse: input is not Hermitian-symmetric");
    }
    RealField out = RealField::zeros(field.grid);
    const double scale = inverse_scale(field.grid);
    std::vector<std::complex<double>> data(field.grid.size());
    for (int c = 0; c < field.grid.dim(); ++c) {
        data = field.comps[c];
        fft_lattice(data, field.grid, +1);
        double max_real = 0.0;
        double max_imag = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const std::complex<double> v = data[i] * scale;
            out.comps[c][i] = v.real();
            max_real = std::max(max_real, std::abs(v.real()));
            max_imag = std::max(max_imag, std::abs(v.imag()));
        }
        if (max_imag > 1e-12 * std::max(1.0, max_real)) {
            throw InvariantError("dft_inverse: imaginary residue above 1e-12");
        }
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double unit_open(std::uint64_t x) {
    // (0, 1): top 53 bits, shifted off zero for the log below.
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

SpectralField band_limited_random(const GridSpec& grid, double radius, std::uint64_t seed) {
    if (radius > grid.nyquist_radius()) {
        throw ConfigError("band_limited_random: radius exceeds the Nyquist radius");
    }
    SpectralField out = SpectralField::zeros(grid);
    const int nyq = grid.n() / 2;
    for (int c = 0; c < grid.dim(); ++c) {
        auto& comp = out.comps[c];
        // Coefficients are keyed by (seed, component, mode), not drawn in
        // sequence: fields with nested radii share the coefficients of their
        // common band, so sweep ratios compare like with like.
        const std::uint64_t stream = splitmix64(seed ^ splitmix64(0x5EEDBA5Eull + c));
        for (std::size_t i = 0; i < comp.size(); ++i) {
            if (grid.freq_norm(i) > radius) continue;
            const std::array<int, 3> k = grid.freq_vector(i);
            bool at_nyquist = false;
            for (int a = 0; a < grid.dim(); ++a) at_nyquist = at_nyquist || (k[a] == nyq);
            if (at_nyquist) continue;
            const std::size_t j = grid.conjugate_index(i);
            if (j < i) continue;
            const std::uint64_t u_bits = splitmix64(stream ^ splitmix64(2 * i));
            const std::uint64_t v_bits = splitmix64(stream ^ splitmix64(2 * i + 1));
            const double rho = std::sqrt(-2.0 * std::log(unit_open(u_bits)));
            const double theta = 2.0 * std::numbers::pi * unit_open(v_bits);
            if (i == j) {
                comp[i] = {rho * std::cos(theta), 0.0};
            } else {
                const std::complex<double> v{rho * std::cos(theta), rho * std::sin(theta)};
                comp[i] = v;
                comp[j] = std::conj(v);
            }
        }
    }
    return out;
}

SpectralField band_profile(const GridSpec& grid, double radius) {
    if (radius > grid.nyquist_radius()) {
        throw ConfigError("band_profile: radius exceeds the Nyquist radius");
    }
    SpectralField out = SpectralField::zeros(grid);
    for (int c = 0; c < grid.dim(); ++c) {
        auto& comp = out.comps[c];
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const double r = grid.freq_norm(i);
            if (r == 0.0 || r > radius) continue;
            const double t = r / radius;
            const double one_minus = 1.0 - t * t;
            comp[i] = {t * t * one_minus * one_minus, 0.0};
        }
    }
    return out;
}

void write_field_csv(const SpectralField& field, std::ostream& out) {
    out << "component";
    const char* names[3] = {"i", "j", "k"};
    for (int a = 0; a < field.grid.dim(); ++a) out << ',' << names[a];
    out << ",re,im\n";
    char line[192];
    for (int c = 0; c < field.grid.dim(); ++c) {
        for (std::size_t flat = 0; flat < field.grid.size(); ++flat) {
            const std::array<int, 3> idx = field.grid.unflatten(flat);
            out << c;
            for (int a = 0; a < field.grid.dim(); ++a) out << ',' << idx[a];
            std::snprintf(line, sizeof(line), ",%.17g,%.17g\n", field.comps[c][flat].real(),
                          field.comps[c][flat].imag());
            out << line;
        }
    }
}

namespace {
constexpr char kFieldMagic[8] = {'P', 'D', 'N', 'F', 'L', 'D', '1', '\0'};
}

void write_field_binary(const SpectralField& field, std::ostream& out) {
    // 32-byte header: magic[8], u32 dim, u32 n, f64 L, u64 reserved.
    // Payload assumes a little-endian host.
    char header[32] = {};
    std::memcpy(header, kFieldMagic, 8);
    const std::uint32_t d = static_cast<std::uint32_t>(field.grid.dim());
    const std::uint32_t n = static_cast<std::uint32_t>(field.grid.n());
    const double box = field.grid.box_length();
    std::memcpy(header + 8, &d, 4);
    std::memcpy(header + 12, &n, 4);
    std::memcpy(header + 16, &box, 8);
    out.write(header, sizeof(header));
    for (const auto& comp : field.comps) {
        out.write(reinterpret_cast<const char*>(comp.data()),
                  static_cast<std::streamsize>(comp.size() * sizeof(std::complex<double>)));
    }
}

SpectralField read_field_binary(std::istream& in) {
    char header[32] = {};
    in.read(header, sizeof(header));
    if (!in || std::memcmp(header, kFieldMagic, 8) != 0) {
        throw ConfigError("read_field_binary: bad magic or truncated header");
    }
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    double box = 0.0;
    std::memcpy(&d, header + 8, 4);
    std::memcpy(&n, header + 12, 4);
    std::memcpy(&box, header + 16, 8);
    GridSpec grid(static_cast<int>(d), static_cast<int>(n), box);
    SpectralField field = SpectralField::zeros(grid);
    for (auto& comp : field.comps) {
        in.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(comp.size() * sizeof(std::complex<double>)));
        if (!in) throw ConfigError("read_field_binary: truncated payload");
    }
    return field;
}

} // namespace peridyn
