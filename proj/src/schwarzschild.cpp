#include "coneindex/schwarzschild.hpp"
#include "coneindex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace coneindex {

namespace {

// x^p via exp/log for positive x; fractional powers of negative bases are
// precondition violations upstream, never silent NaN here.
double pospow(double x, double p) {
    if (x <= 0.0)
        throw std::domain_error("pospow: nonpositive base");
    return std::exp(p * std::log(x));
}

void check_radius(const SchwarzschildSpace& space, double r, const char* op) {
    if (!(r >= space.R0 * (1.0 - 1e-12)))
        throw std::domain_error(std::string(op) + ": radius below the horizon");
}

} // namespace

SchwarzschildSpace make_space(int n, double m) {
    if (n < 3)
        throw std::domain_error("make_space: dimension must be at least 3");
    if (!(m > 0.0))
        throw std::domain_error("make_space: mass must be positive");
    SchwarzschildSpace s;
    s.n = n;
    s.m = m;
    s.N = n - 1;
    s.R0 = pospow(0.5 * m, 1.0 / (n - 2));
    s.s0 = pospow(2.0 * m, 1.0 / (n - 2));
    return s;
}

namespace scaled {

double isotropic_factor(int n, double x) {
    return pospow(1.0 + pospow(x, 2.0 - n), 2.0 / (n - 2));
}

double cone_factor(int n, double x) {
    return pospow(1.0 + pospow(x, 2.0 - n), double(n - 3) / (n - 2));
}

double dlog_cone_factor(int n, double x) {
    return -(n - 3.0) / (pospow(x, n - 1.0) + x);
}

double radial_potential(int n, double x) {
    const double xn2 = pospow(x, n - 2.0);
    const double y = xn2 / (1.0 + xn2);
    return (n - 1.0) * y * y / (x * x * xn2);
}

double umbilicity(int n, double x) {
    const double xn2 = pospow(x, n - 2.0);
    return x * (xn2 - 1.0) / pospow(xn2 + 1.0, double(n) / (n - 2));
}

} // namespace scaled

double isotropic_factor(const SchwarzschildSpace& space, double r) {
    check_radius(space, r, "isotropic_factor");
    return scaled::isotropic_factor(space.n, r / space.R0);
}

double cone_factor(const SchwarzschildSpace& space, double r) {
    check_radius(space, r, "cone_factor");
    return scaled::cone_factor(space.n, r / space.R0);
}

double cone_factor_deriv(const SchwarzschildSpace& space, double r) {
    check_radius(space, r, "cone_factor_deriv");
    const int n = space.n;
    const double base = 1.0 + 0.5 * space.m * pospow(r, 2.0 - n);
    return -(space.N - 2.0) * 0.5 * space.m * pospow(r, 1.0 - n) *
           pospow(base, double(space.N - 2) / (n - 2) - 1.0);
}

double umbilicity(const SchwarzschildSpace& space, double R) {
    check_radius(space, R, "umbilicity");
    return scaled::umbilicity(space.n, R / space.R0) / space.R0;
}

double radial_potential(const SchwarzschildSpace& space, double r) {
    check_radius(space, r, "radial_potential");
    return scaled::radial_potential(space.n, r / space.R0) / (space.R0 * space.R0);
}

// ---------------------------------------------------------------------------
// Areal profile
// ---------------------------------------------------------------------------

namespace {

double ode_rhs(int n, double m, double h) {
    const double arg = 1.0 - 2.0 * m * pospow(h, 2.0 - n);
    if (arg < 0.0) {
        // Legitimate only as roundoff at the degenerate start.
        if (arg > -1e-12) return 0.0;
        throw NumericError("areal_profile", "square-root argument went negative");
    }
    return std::sqrt(arg);
}

struct March {
    std::vector<double> r, h, hp;
};

// One classic RK4 step for h' = g(h).
double rk4_step(int n, double m, double h, double dr) {
    const double k1 = ode_rhs(n, m, h);
    const double k2 = ode_rhs(n, m, h + 0.5 * dr * k1);
    const double k3 = ode_rhs(n, m, h + 0.5 * dr * k2);
    const double k4 = ode_rhs(n, m, h + dr * k3);
    return h + dr / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

March integrate(const SchwarzschildSpace& space, double r_max, double tol) {
    const int n = space.n;
    const double m = space.m;
    const double s0 = space.s0;

    March out;
    out.r.push_back(0.0);
    out.h.push_back(s0);
    out.hp.push_back(0.0);

    // Series start through the degenerate point: h = s0 + c2 r^2 + c4 r^4.
    const double c2 = 0.5 * m * (n - 2) * pospow(s0, 1.0 - n);
    const double c4 = c2 * c2 * (1.0 - n) / (6.0 * s0);
    const double dr0 = std::min(0.05 * s0, 0.02 * pospow(tol / 1e-9, 0.25) * s0);
    const double r1 = std::max(dr0, 1e-8 * s0);
    out.r.push_back(r1);
    out.h.push_back(s0 + c2 * r1 * r1 + c4 * r1 * r1 * r1 * r1);
    out.hp.push_back(2.0 * c2 * r1 + 4.0 * c4 * r1 * r1 * r1);

    // RK4 march with a step law tied to the interpolant residual target:
    // the Hermite midpoint defect scales like |h''''| dr^3, and
    // h'''' ~ m n^3 h^{-n-1} along the solution.
    double r = r1, h = out.h.back();
    const double cap = r_max / 512.0;
    while (r < r_max) {
        const double h4 = m * double(n) * double(n) * double(n) *
                          pospow(h, -double(n) - 1.0);
        double dr = 0.5 * std::cbrt(72.0 * 10.0 * tol / std::max(h4, 1e-300));
        dr = std::clamp(dr, 1e-6 * s0, cap);
        if (r + dr > r_max) dr = r_max - r;

        // step-doubling error control on top of the residual law
        for (;;) {
            const double one = rk4_step(n, m, h, dr);
            const double half = rk4_step(n, m, rk4_step(n, m, h, 0.5 * dr), 0.5 * dr);
            if (std::abs(one - half) <= 0.2 * tol * std::max(1.0, std::abs(half)) ||
                dr <= 1e-7 * s0) {
                h = half + (half - one) / 15.0;
                break;
            }
            dr *= 0.5;
        }
        r += dr;
        out.r.push_back(r);
        out.h.push_back(h);
        out.hp.push_back(ode_rhs(n, m, h));
        if (out.r.size() > 4'000'000)
            throw NumericError("areal_profile", "node budget exceeded");
    }
    return out;
}

} // namespace

size_t ArealProfile::interval_of(double r) const {
    if (r < grid.front() - 1e-12 || r > grid.back() * (1.0 + 1e-12))
        throw std::domain_error("ArealProfile: query outside profile range");
    const auto it = std::upper_bound(grid.begin(), grid.end(), r);
    size_t i = (it == grid.begin()) ? 0 : size_t(it - grid.begin() - 1);
    return std::min(i, grid.size() - 2);
}

double ArealProfile::h(double r) const {
    const size_t i = interval_of(r);
    const double dr = grid[i + 1] - grid[i];
    const double s = (r - grid[i]) / dr;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * h_values[i] + h10 * dr * hprime_values[i] +
           h01 * h_values[i + 1] + h11 * dr * hprime_values[i + 1];
}

double ArealProfile::hprime(double r) const {
    const size_t i = interval_of(r);
    const double dr = grid[i + 1] - grid[i];
    const double s = (r - grid[i]) / dr;
    const double s2 = s * s;
    const double d00 = (6 * s2 - 6 * s) / dr, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / dr, d11 = 3 * s2 - 2 * s;
    return d00 * h_values[i] + d10 * hprime_values[i] +
           d01 * h_values[i + 1] + d11 * hprime_values[i + 1];
}

double ArealProfile::divergence_conformal_field(double r) const {
    return (n - 1) * hprime(r);
}

void ArealProfile::write_csv(std::ostream& os) const {
    os << "r,h,hprime\n";
    char buf[96];
    for (size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", grid[i],
                      h_values[i], hprime_values[i]);
        os << buf;
    }
}

ArealProfile areal_profile(const SchwarzschildSpace& space, double r_max,
                           double tol) {
    if (!(r_max > 0.0)) throw std::domain_error("areal_profile: r_max must be positive");
    if (!(tol > 0.0)) throw std::domain_error("areal_profile: tol must be positive");

    double work_tol = tol;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const March m = integrate(space, r_max, work_tol);
        ArealProfile p;
        p.n = space.n;
        p.m = space.m;
        p.s0 = space.s0;
        p.grid = m.r;
        p.h_values = m.h;
        p.hprime_values = m.hp;

        // Validate the interpolant against the ODE at interval midpoints.
        double worst = 0.0;
        for (size_t i = 0; i + 1 < p.grid.size(); ++i) {
            const double rm = 0.5 * (p.grid[i] + p.grid[i + 1]);
            const double resid =
                std::abs(p.hprime(rm) - ode_rhs(space.n, space.m, p.h(rm)));
            worst = std::max(worst, resid);
        }
        if (worst <= 10.0 * tol) return p;
        work_tol *= 0.1;
    }
    throw NumericError("areal_profile", "residual target not reached");
}

} // namespace coneindex
