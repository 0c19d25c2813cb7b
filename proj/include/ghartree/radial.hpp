#pragma once

#include <functional>

namespace ghartree {
namespace radial {

using RadialFn = std::function<double(double)>;

/// Adaptive Simpson quadrature of f over [a, b].
double integrate(const RadialFn& f, double a, double b, double tol = 1e-10);

/// Same, with the interval split into geometric panels; robust for slowly
/// decaying integrands over many decades.
double integrate_panels(const RadialFn& f, double a, double b, double tol = 1e-10);

/// Spherical average of |r e1 - s w|^{-b} over w in S^{N-1}: the weight W(r,s)
/// with which a radial profile g enters (|x|^{-b} * g)(r) =
/// Integral_0^inf W(r,s) g(s) s^{N-1} ds. Closed forms for the cases used by
/// the worked examples, one-dimensional quadrature otherwise.
double sphere_average_kernel(int dim, double b, double r, double s);

/// Radial free-space Riesz convolution by 1-d quadrature (Newton's theorem in
/// the harmonic cases b = N-2). `tail` may supply the analytic value of
/// Integral_{r_max}^inf W(r,s) g(s) s^{N-1} ds; pass nullptr when g is
/// negligible beyond r_max.
double riesz_convolve_radial(int dim, double b, const RadialFn& g, double r, double r_max,
                             const std::function<double(double /*r*/)>* tail = nullptr,
                             double tol = 1e-10);

/// S_{N-1} Integral_0^rmax f(r) r^{N-1} dr.
double integrate_over_space(int dim, const RadialFn& f, double r_max, double tol = 1e-10);

/// Exact Gaussian Riesz potentials used as test references:
/// (|x|^{-1} * e^{-gamma |x|^2}) in 3d and (|x|^{-2} * e^{-gamma |x|^2}) in 4d.
double gaussian_potential_3d_b1(double gamma, double r);
double gaussian_potential_4d_b2(double gamma, double r);

double sphere_area(int dim); // |S^{N-1}|

} // namespace radial
} // namespace ghartree
