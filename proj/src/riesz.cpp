#include "ghartree/riesz.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "fft_internal.hpp"

namespace ghartree {

namespace {

constexpr double kPi = 3.14159265358979323846;

double surface_area(int dim) { // |S^{N-1}|
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

// defaults of the corrected rule
constexpr double kEtaCells = 3.0; // screening length eta^{-1} = kEtaCells * h
constexpr int kMomentCount = 4;

// r_N(s): number of lattice vectors in Z^N with |j|^2 = s, for s <= smax.
std::vector<double> shell_counts(int dim, long long smax) {
    std::vector<double> counts(static_cast<std::size_t>(smax) + 1, 0.0);
    const long long jmax = static_cast<long long>(std::sqrt(static_cast<double>(smax)));
    std::vector<double> one(static_cast<std::size_t>(smax) + 1, 0.0);
    one[0] = 1.0;
    for (long long j = 1; j <= jmax; ++j)
        if (j * j <= smax)
            one[static_cast<std::size_t>(j * j)] = 2.0;
    counts = one;
    for (int d = 1; d < dim; ++d) {
        std::vector<double> next(counts.size(), 0.0);
        for (std::size_t s1 = 0; s1 < counts.size(); ++s1) {
            if (counts[s1] == 0.0)
                continue;
            for (long long j = 0; j * j + static_cast<long long>(s1) <= smax; ++j) {
                const double w = (j == 0) ? 1.0 : 2.0;
                next[s1 + static_cast<std::size_t>(j * j)] += counts[s1] * w;
            }
        }
        counts.swap(next);
    }
    return counts;
}

// Gauss elimination with partial pivoting for the tiny moment system.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c)
            s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

bool log_enabled() {
    const char* env = std::getenv("GHARTREE_LOG");
    return env != nullptr && env[0] != '\0' && env[0] != '0';
}

} // namespace

double RieszKernel::ball_average_center(int dim, double b, double h) {
    const double a = h * std::pow(std::tgamma(0.5 * dim + 1.0), 1.0 / dim) / std::sqrt(kPi);
    return dim * std::pow(a, -b) / (dim - b);
}

RieszKernel::RieszKernel(const Grid& grid, double b, SingularRule rule)
    : grid_(grid), b_(b), rule_(rule) {
    if (!(b > 0.0) || !(b < grid.dim))
        throw InvalidParams("Riesz exponent must satisfy 0 < b < N");
    const double h = grid_.spacing();
    if (rule_ == SingularRule::BallAverage) {
        center_ = ball_average_center(grid_.dim, b_, h);
    } else {
        // Ewald split: K = K_short + K_long with K_short = |z|^{-b} Q(b/2, (eta|z|)^2).
        // Weights on the shells |j|^2 in {0,1,2,4} (1d: {0,1,4,9}) make the
        // lattice moments 0..3 of the short part match the exact integrals.
        const double eta = 1.0 / (kEtaCells * h);
        const double s = 0.5 * b_;
        const int N = grid_.dim;
        const long long jcut = static_cast<long long>(std::ceil(9.0 * kEtaCells));
        const long long smax = static_cast<long long>(N) * jcut * jcut;
        const std::vector<double> counts = shell_counts(N, smax);

        std::vector<double> lattice_moment(kMomentCount, 0.0);
        for (long long sq = 1; sq <= smax; ++sq) {
            const double cnt = counts[static_cast<std::size_t>(sq)];
            if (cnt == 0.0)
                continue;
            const double r = h * std::sqrt(static_cast<double>(sq));
            const double x = eta * r;
            if (x * x > 700.0)
                break;
            const double kshort = std::pow(r, -b_) * boost::math::gamma_q(s, x * x);
            double rpow = 1.0;
            for (int M = 0; M < kMomentCount; ++M) {
                lattice_moment[static_cast<std::size_t>(M)] += cnt * kshort * rpow;
                rpow *= r * r;
            }
        }
        const double hN = grid_.cell_volume();
        const double area = surface_area(N);
        std::vector<double> rhs(kMomentCount);
        for (int M = 0; M < kMomentCount; ++M) {
            const double a_exp = N + 2 * M - b_;
            const double exact = area * std::tgamma(0.5 * (N + 2 * M)) /
                                 (a_exp * std::tgamma(s) * std::pow(eta, a_exp));
            const double resid = exact - hN * lattice_moment[static_cast<std::size_t>(M)];
            rhs[static_cast<std::size_t>(M)] =
                resid / (hN * std::pow(h, 2.0 * M)); // nondimensionalized
        }
        shell_squares_ = (N == 1) ? std::vector<long long>{0, 1, 4, 9}
                                  : std::vector<long long>{0, 1, 2, 4};
        std::vector<std::vector<double>> a(kMomentCount, std::vector<double>(kMomentCount));
        for (int M = 0; M < kMomentCount; ++M)
            for (int c = 0; c < kMomentCount; ++c) {
                const double sq = static_cast<double>(shell_squares_[static_cast<std::size_t>(c)]);
                a[static_cast<std::size_t>(M)][static_cast<std::size_t>(c)] =
                    counts[static_cast<std::size_t>(shell_squares_[static_cast<std::size_t>(c)])] *
                    ((M == 0) ? 1.0 : std::pow(sq, M));
            }
        shell_deltas_ = solve_dense(a, rhs);
        center_ = std::pow(eta, b_) / std::tgamma(s + 1.0) + shell_deltas_[0]; // K_long(0) + w0
    }
    build_table_spectrum();
}

double RieszKernel::table_value(const std::array<int, 4>& offset) const {
    long long sq = 0;
    for (int d = 0; d < grid_.dim; ++d) {
        const long long o = offset[static_cast<std::size_t>(d)];
        if (std::llabs(o) >= grid_.n)
            throw GridMismatch("table_value: offset outside (-n, n)");
        sq += o * o;
    }
    if (sq == 0)
        return center_;
    const double r = grid_.spacing() * std::sqrt(static_cast<double>(sq));
    double v = std::pow(r, -b_);
    if (rule_ == SingularRule::LatticeCorrected) {
        for (std::size_t c = 1; c < shell_squares_.size(); ++c)
            if (sq == shell_squares_[c])
                v += shell_deltas_[c];
    }
    return v;
}

void RieszKernel::build_table_spectrum() {
    const int N = grid_.dim;
    const int m = 2 * grid_.n;
    padded_dims_.assign(static_cast<std::size_t>(N), m);
    std::size_t padded_size = 1;
    for (int d = 0; d < N; ++d)
        padded_size *= static_cast<std::size_t>(m);
    const std::size_t half = padded_size / static_cast<std::size_t>(m) *
                             (static_cast<std::size_t>(m) / 2 + 1);

    std::vector<double> table(padded_size);
    const double h = grid_.spacing();
    std::array<int, 4> idx{};
    for (std::size_t flat = 0; flat < padded_size; ++flat) {
        std::size_t rest = flat;
        for (int d = N - 1; d >= 0; --d) {
            idx[static_cast<std::size_t>(d)] = static_cast<int>(rest % static_cast<std::size_t>(m));
            rest /= static_cast<std::size_t>(m);
        }
        long long sq = 0;
        for (int d = 0; d < N; ++d) {
            const int t = idx[static_cast<std::size_t>(d)];
            const long long o = std::min(t, m - t);
            sq += o * o;
        }
        if (sq == 0) {
            table[flat] = center_;
        } else {
            double v = std::pow(h * std::sqrt(static_cast<double>(sq)), -b_);
            if (rule_ == SingularRule::LatticeCorrected) {
                for (std::size_t c = 1; c < shell_squares_.size(); ++c)
                    if (sq == shell_squares_[c])
                        v += shell_deltas_[c];
            }
            table[flat] = v;
        }
    }

    std::vector<Complex> spec(half);
    fft::r2c_nd(N, padded_dims_.data(), table.data(), spec.data());
    khat_.resize(half);
    // kernel table is even in every axis, so the spectrum is real
    for (std::size_t i = 0; i < half; ++i)
        khat_[i] = spec[i].real();
}

RealField RieszKernel::convolve(const RealField& g, ConvolveStats* stats) const {
    if (!(g.grid == grid_))
        throw GridMismatch("convolve: field grid does not match kernel grid");
    g.require_finite();

    const double frac = boundary_mass_fraction(g);
    const bool warn = frac > 1e-6;
    if (stats != nullptr) {
        stats->boundary_mass_fraction = frac;
        stats->boundary_warning = warn;
    }
    if (warn && log_enabled())
        std::fprintf(stderr,
                     "[ghartree] riesz_convolve: boundary mass fraction %.3e exceeds 1e-6; "
                     "enlarge the box\n",
                     frac);

    const int N = grid_.dim;
    const int n = grid_.n;
    const int m = 2 * n;
    std::size_t padded_size = 1;
    for (int d = 0; d < N; ++d)
        padded_size *= static_cast<std::size_t>(m);
    const std::size_t half = padded_size / static_cast<std::size_t>(m) *
                             (static_cast<std::size_t>(m) / 2 + 1);

    std::vector<double> padded(padded_size, 0.0);
    std::array<int, 4> idx{};
    const std::size_t total = g.values.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.grid.decode(flat, idx);
        std::size_t pflat = 0;
        for (int d = 0; d < N; ++d)
            pflat = pflat * static_cast<std::size_t>(m) +
                    static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
        padded[pflat] = g.values[flat];
    }

    std::vector<Complex> spec(half);
    fft::r2c_nd(N, padded_dims_.data(), padded.data(), spec.data());
    const double scale = grid_.cell_volume() / static_cast<double>(padded_size);
    for (std::size_t i = 0; i < half; ++i)
        spec[i] *= khat_[i] * scale;
    fft::c2r_nd(N, padded_dims_.data(), spec.data(), padded.data());

    RealField out(grid_);
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.grid.decode(flat, idx);
        std::size_t pflat = 0;
        for (int d = 0; d < N; ++d)
            pflat = pflat * static_cast<std::size_t>(m) +
                    static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
        out.values[flat] = padded[pflat];
    }
    return out;
}

RealField nonlinear_potential(const ComplexField& u, const EquationParams& params,
                              const RieszKernel& kernel, ConvolveStats* stats) {
    params.validate();
    if (!(u.grid == kernel.grid()))
        throw GridMismatch("nonlinear_potential: field grid does not match kernel grid");
    return kernel.convolve(abs_power(u, params.power), stats);
}

ComplexField nonlinear_term(const ComplexField& u, const EquationParams& params,
                            const RieszKernel& kernel, ConvolveStats* stats) {
    const RealField v = nonlinear_potential(u, params, kernel, stats);
    ComplexField out(u.grid);
    const double q = params.power - 2.0;
    const std::size_t total = u.values.size();
    for (std::size_t i = 0; i < total; ++i) {
        const double amp = (q == 0.0) ? 1.0 : std::pow(std::norm(u.values[i]), 0.5 * q);
        out.values[i] = v.values[i] * amp * u.values[i];
    }
    return out;
}

} // namespace ghartree
