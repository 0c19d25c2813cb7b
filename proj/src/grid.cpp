#include "ghartree/grid.hpp"

#include <cmath>

namespace ghartree {

bool fft_friendly(int n) noexcept {
    if (n < 2 || n % 2 != 0)
        return false;
    for (int f : {2, 3, 5})
        while (n % f == 0)
            n /= f;
    return n == 1;
}

Grid::Grid(int dim_, int n_, double half_extent_) : dim(dim_), n(n_), half_extent(half_extent_) {
    if (dim < 1 || dim > 4)
        throw InvalidParams("grid dimension must be in {1,2,3,4}");
    if (n < 8)
        throw InvalidParams("grid needs at least 8 points per dimension");
    if (!fft_friendly(n))
        throw InvalidParams("points per dimension must be even and 2/3/5-smooth");
    if (!(half_extent > 0.0))
        throw InvalidParams("half extent must be positive");
    double total = 1.0;
    for (int d = 0; d < dim; ++d)
        total *= n;
    if (total > 268435456.0) // 2^28
        throw InvalidParams("grid exceeds the n^N <= 2^28 memory guard");
}

double Grid::cell_volume() const noexcept {
    double v = 1.0;
    for (int d = 0; d < dim; ++d)
        v *= spacing();
    return v;
}

std::size_t Grid::size() const noexcept {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d)
        s *= static_cast<std::size_t>(n);
    return s;
}

void Grid::decode(std::size_t flat, std::array<int, 4>& idx) const noexcept {
    for (int d = dim - 1; d >= 0; --d) {
        idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % n);
        flat /= static_cast<std::size_t>(n);
    }
    for (int d = dim; d < 4; ++d)
        idx[static_cast<std::size_t>(d)] = 0;
}

} // namespace ghartree
