#include "peridyn/grid.hpp"

#include <cmath>
#include <numbers>

#include "peridyn/errors.hpp"

namespace peridyn {

GridSpec::GridSpec(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), box_length_(box_length) {
    if (dim < 1 || dim > 3) throw ConfigError("grid: dimension must be 1, 2, or 3");
    if (n_ < 8 || (n_ & (n_ - 1)) != 0) {
        throw ConfigError("grid: points per axis must be a power of two, at least 8");
    }
    if (!(box_length > 0.0)) throw ConfigError("grid: box length must be positive");
    two_pi_over_length_ = 2.0 * std::numbers::pi / box_length_;
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
}

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const noexcept {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n_);
        flat /= n_;
    }
    return idx;
}

std::size_t GridSpec::flatten(const std::array<int, 3>& idx) const noexcept {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        flat = flat * n_ + static_cast<std::size_t>(idx[a]);
    }
    return flat;
}

std::array<int, 3> GridSpec::freq_vector(std::size_t flat) const noexcept {
    std::array<int, 3> idx = unflatten(flat);
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < dim_; ++a) k[a] = freq_int(idx[a]);
    return k;
}

std::int64_t GridSpec::freq_norm_sq_int(std::size_t flat) const noexcept {
    std::array<int, 3> k = freq_vector(flat);
    std::int64_t s = 0;
    for (int a = 0; a < dim_; ++a) s += static_cast<std::int64_t>(k[a]) * k[a];
    return s;
}

double GridSpec::freq_norm(std::size_t flat) const noexcept {
    return two_pi_over_length_ * std::sqrt(static_cast<double>(freq_norm_sq_int(flat)));
}

std::size_t GridSpec::conjugate_index(std::size_t flat) const noexcept {
    std::array<int, 3> idx = unflatten(flat);
    std::array<int, 3> neg{0, 0, 0};
    for (int a = 0; a < dim_; ++a) neg[a] = (n_ - idx[a]) % n_;
    return flatten(neg);
}

bool GridSpec::self_conjugate(std::size_t flat) const noexcept {
    return conjugate_index(flat) == flat;
}

} // namespace peridyn
