#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

namespace peridyn {

/// Cubic periodic box discretization: d axes, n points per axis (power of
/// two, n >= 8), box length L. Frequency lattice xi_k = (2 pi / L) k with
/// integer k in {-n/2+1, ..., n/2} per axis; the Nyquist index maps to +n/2.
class GridSpec {
public:
    GridSpec(int dim, int points_per_axis, double box_length);

    int dim() const noexcept { return dim_; }
    int n() const noexcept { return n_; }
    double box_length() const noexcept { return box_length_; }
    double mesh() const noexcept { return box_length_ / n_; }
    double dxi() const noexcept { return two_pi_over_length_; }
    double nyquist_radius() const noexcept { return two_pi_over_length_ * n_ / 2; }
    std::size_t size() const noexcept { return size_; }

    /// Integer frequency of axis index i in {-n/2+1, ..., n/2}.
    int freq_int(int axis_index) const noexcept {
        return axis_index <= n_ / 2 ? axis_index : axis_index - n_;
    }

    std::array<int, 3> unflatten(std::size_t flat) const noexcept;
    std::size_t flatten(const std::array<int, 3>& idx) const noexcept;

    /// Integer frequency vector at a flat index.
    std::array<int, 3> freq_vector(std::size_t flat) const noexcept;

    /// Sum of squared integer frequencies (exact shell label).
    std::int64_t freq_norm_sq_int(std::size_t flat) const noexcept;

    /// |xi| at a flat index.
    double freq_norm(std::size_t flat) const noexcept;

    /// Flat index of the negated frequency vector.
    std::size_t conjugate_index(std::size_t flat) const noexcept;

    /// True when the mode equals its own negation (all axes at 0 or Nyquist).
    bool self_conjugate(std::size_t flat) const noexcept;

    bool operator==(const GridSpec& other) const noexcept {
        return dim_ == other.dim_ && n_ == other.n_ && box_length_ == other.box_length_;
    }

private:
    int dim_;
    int n_;
    double box_length_;
    double two_pi_over_length_;
    std::size_t size_;
};

} // namespace peridyn
