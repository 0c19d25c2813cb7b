#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "ghartree/errors.hpp"

namespace ghartree {

/// Uniform box grid on [-L, L)^N, spacing h = 2L/n. n must be even,
/// 2/3/5-smooth (transform-friendly) and the total point count must stay
/// within desk memory (n^N <= 2^28).
struct Grid {
    int dim = 3;
    int n = 64;
    double half_extent = 12.0; // L

    Grid() = default;
    Grid(int dim_, int n_, double half_extent_);

    double spacing() const noexcept { return 2.0 * half_extent / n; }
    double cell_volume() const noexcept; // h^N
    std::size_t size() const noexcept;   // n^N

    /// Coordinate of sample index i along one axis: -L + i h.
    double coordinate(int i) const noexcept { return -half_extent + i * spacing(); }

    /// Angular frequency of transform index k along one axis (wrapped to
    /// [-n/2, n/2)): xi_k = pi k / L.
    double frequency(int k) const noexcept {
        const int ks = k < n / 2 ? k : k - n;
        return 3.14159265358979323846 * ks / half_extent;
    }

    void decode(std::size_t flat, std::array<int, 4>& idx) const noexcept;

    bool operator==(const Grid& other) const noexcept {
        return dim == other.dim && n == other.n && half_extent == other.half_extent;
    }
};

bool fft_friendly(int n) noexcept; // only prime factors 2, 3, 5 and n even

} // namespace ghartree
