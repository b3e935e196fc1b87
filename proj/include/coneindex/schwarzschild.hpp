#pragma once

#include <iosfwd>
#include <vector>

namespace coneindex {

// Ambient geometry: the exterior region |x| >= R0 of R^n carrying the
// conformally flat metric (1 + m/(2|x|^{n-2}))^{4/(n-2)} * delta.
//
// R0 is the horizon radius in the isotropic (conformal) chart, s0 the
// horizon radius in the areal chart; N = n-1 is the dimension of the
// cones this library studies inside the space.
struct SchwarzschildSpace {
    int n = 0;
    double m = 0.0;
    double R0 = 0.0;
    double s0 = 0.0;
    int N = 0;
};

SchwarzschildSpace make_space(int n, double m);

// Conformal factor of the ambient metric: f(r) = (1 + m/(2 r^{n-2}))^{2/(n-2)}.
double isotropic_factor(const SchwarzschildSpace& space, double r);

// Conformal factor of the induced cone metric:
// F(r) = (1 + m/(2 r^{n-2}))^{(N-2)/(n-2)}, so g = F^{4/(N-2)} g_delta.
double cone_factor(const SchwarzschildSpace& space, double r);

// Analytic derivative dF/dr.
double cone_factor_deriv(const SchwarzschildSpace& space, double r);

// Principal curvature of the centered sphere of isotropic radius R:
// kappa(R) = (R^{n-2} - R0^{n-2}) R / (R^{n-2} + R0^{n-2})^{n/(n-2)}.
// Vanishes at the horizon, positive outside.
double umbilicity(const SchwarzschildSpace& space, double R);

// Radial potential of the separated Jacobi problem in the flat picture:
// V(r) = m(n-1)/(2 r^n) * (2 r^{n-2} / (m + 2 r^{n-2}))^2.
double radial_potential(const SchwarzschildSpace& space, double r);

// Dimensionless forms in x = r/R0 (the mass drops out). Shared by the
// spectral machinery; exposed for tests.
namespace scaled {
double isotropic_factor(int n, double x);
double cone_factor(int n, double x);
// d(log F)/dx = -(n-3)/(x^{n-1} + x)
double dlog_cone_factor(int n, double x);
// R0^2 V = (n-1) x^{n-4} / (1 + x^{n-2})^2
double radial_potential(int n, double x);
// R0 * kappa = x (x^{n-2} - 1) / (x^{n-2} + 1)^{n/(n-2)}
double umbilicity(int n, double x);
} // namespace scaled

// Radial profile of the areal coordinate: h solves
//   h'(r) = sqrt(1 - 2 m h^{2-n}),  h(0) = s0,
// where r is the distance to the horizon. h' is the static potential.
// Evaluation between nodes is cubic Hermite on the stored grid, so the
// stored derivative values are the interpolant's node derivatives.
struct ArealProfile {
    int n = 0;
    double m = 0.0;
    double s0 = 0.0;
    int interpolation_order = 3;
    std::vector<double> grid;
    std::vector<double> h_values;
    std::vector<double> hprime_values;

    double r_max() const { return grid.back(); }
    double h(double r) const;
    double hprime(double r) const;
    // Static potential f(r) = h'(r).
    double static_potential(double r) const { return hprime(r); }
    // div of the conformal field h(r) d/dr along a minimal hypersurface.
    double divergence_conformal_field(double r) const;

    void write_csv(std::ostream& os) const;

private:
    size_t interval_of(double r) const;
};

// Integrates the profile ODE out to r_max. The integrand is degenerate at
// r = 0 (h'(0) = 0); the march starts with a quartic series step and
// continues with step-doubled RK4. The built interpolant is verified:
// the ODE residual at every interval midpoint must be <= 10 * tol, else
// NumericError.
ArealProfile areal_profile(const SchwarzschildSpace& space, double r_max,
                           double tol);

} // namespace coneindex
