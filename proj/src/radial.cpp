#include "ghartree/radial.hpp"

#include <boost/math/special_functions/ellint_1.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghartree {
namespace radial {

namespace {

constexpr double kPi = 3.14159265358979323846;

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const RadialFn& f, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= 15.0 * tol)
        return refined + (refined - whole) / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const RadialFn& f, double a, double b, double tol) {
    if (!(b > a))
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive(f, a, b, fa, fm, fb, whole, tol, 48);
}

double integrate_panels(const RadialFn& f, double a, double b, double tol) {
    if (!(b > a))
        return 0.0;
    double total = 0.0;
    double lo = a;
    double width = std::min(b - a, 1.0);
    while (lo < b) {
        const double hi = std::min(b, lo + width);
        total += integrate(f, lo, hi, tol);
        lo = hi;
        width *= 2.0; // geometric panels handle slowly decaying tails
    }
    return total;
}

double sphere_area(int dim) { return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim); }

double sphere_average_kernel(int dim, double b, double r, double s) {
    if (r < 0.0 || s < 0.0)
        throw std::domain_error("sphere_average_kernel: radii must be nonnegative");
    const double hi = std::max(r, s);
    const double lo = std::min(r, s);
    if (hi == 0.0)
        return std::numeric_limits<double>::infinity();
    if (lo == 0.0)
        return sphere_area(dim) * std::pow(hi, -b);
    if (dim == 3 && b == 1.0)
        return 4.0 * kPi / hi; // Newton
    if (dim == 4 && b == 2.0)
        return 2.0 * kPi * kPi / (hi * hi); // Newton, 4d harmonic kernel
    if (dim == 3 && b == 2.0) {
        if (hi == lo)
            return std::numeric_limits<double>::infinity();
        return (2.0 * kPi / (r * s)) * std::log((r + s) / (hi - lo));
    }
    if (dim == 2 && b == 1.0) {
        const double k = 2.0 * std::sqrt(r * s) / (r + s);
        return 4.0 / (r + s) * boost::math::ellint_1(k);
    }
    // generic fallback: S_{N-2} Integral_0^pi sin^{N-2}t (r^2+s^2-2rs cos t)^{-b/2} dt
    const double area = (dim == 2) ? 2.0 : sphere_area(dim - 1);
    const double r2s2 = r * r + s * s;
    const RadialFn integrand = [=](double t) {
        const double q = r2s2 - 2.0 * r * s * std::cos(t);
        return std::pow(std::sin(t), dim - 2) * std::pow(q, -0.5 * b);
    };
    return area * integrate(integrand, 0.0, kPi, 1e-12);
}

double riesz_convolve_radial(int dim, double b, const RadialFn& g, double r, double r_max,
                             const std::function<double(double)>* tail, double tol) {
    const RadialFn integrand = [&](double s) {
        if (s <= 0.0)
            return 0.0; // W s^{N-1} -> 0 as s -> 0 for b < N
        const double v = sphere_average_kernel(dim, b, r, s) * g(s) * std::pow(s, dim - 1);
        return std::isfinite(v) ? v : 0.0; // isolated angular singularity at s = r
    };
    double v = 0.0;
    // The angular kernel is only piecewise smooth across s = r.
    if (r > 0.0 && r < r_max) {
        v += integrate_panels(integrand, 0.0, r, tol);
        v += integrate_panels(integrand, r, r_max, tol);
    } else {
        v += integrate_panels(integrand, 0.0, r_max, tol);
    }
    if (tail != nullptr)
        v += (*tail)(r);
    return v;
}

double integrate_over_space(int dim, const RadialFn& f, double r_max, double tol) {
    const RadialFn integrand = [&](double r) { return f(r) * std::pow(r, dim - 1); };
    return sphere_area(dim) * integrate_panels(integrand, 0.0, r_max, tol);
}

double gaussian_potential_3d_b1(double gamma, double r) {
    if (r < 1e-12)
        return 2.0 * kPi / gamma;
    return std::pow(kPi / gamma, 1.5) * std::erf(std::sqrt(gamma) * r) / r;
}

double gaussian_potential_4d_b2(double gamma, double r) {
    const double gr2 = gamma * r * r;
    if (gr2 < 1e-12)
        return kPi * kPi / gamma;
    return kPi * kPi * (1.0 - std::exp(-gr2)) / (gamma * gamma * r * r);
}

} // namespace radial
} // namespace ghartree
