#include "coneindex/radial.hpp"

#include "coneindex/errors.hpp"
#include "coneindex/quadrature.hpp"
#include "coneindex/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coneindex {

namespace {

// Everything spectral is assembled in x = r/R0 and t = log x; the mass
// drops out. After the substitution z = u x^{(n-3)/2} the mode form reads
//   Q(z) = int_0^T zdot^2 + p(t) z^2 dt,
//   p(t) = ((n-3)/2)^2 + lambda_k - q(t),
//   q(t) = (n-1)/4 sech^2((n-2) t / 2),
// with z(T) = 0 and, for the horizon Neumann problem, a free endpoint at
// t = 0: the flat-picture Robin term cancels against the substitution's
// boundary term. Mass density: weight(e^t) e^{2t}.
double sech2(double y) {
    const double c = std::cosh(y);
    return 1.0 / (c * c);
}

double mode_q(int n, double t) {
    return 0.25 * (n - 1) * sech2(0.5 * (n - 2) * t);
}

double mode_p(int n, double lambda_k, double t) {
    const double gamma = 0.5 * (n - 3);
    return gamma * gamma + lambda_k - mode_q(n, t);
}

double mass_density(int n, WeightKind w, double t) {
    double wt = std::exp(2.0 * t);
    if (w == WeightKind::SchwarzschildWeight) {
        const double f = scaled::isotropic_factor(n, std::exp(t));
        wt *= f * f;
    }
    return wt;
}

struct Assembled {
    SymTridiag A, B;
    SymTridiag B_log; // unit-weight mass in t; eigenvalues take the
                      // mode-sum scale there, which anchors zero detection
};

Assembled assemble_mode(const ModeProblem& pb, int nodes) {
    const int n = pb.space.n;
    const double T = std::log(pb.R / pb.space.R0);
    const double dt = T / (nodes - 1);

    SymTridiag A, B, B0;
    A.diag.assign(nodes, 0.0);
    A.off.assign(nodes - 1, 0.0);
    B.diag.assign(nodes, 0.0);
    B.off.assign(nodes - 1, 0.0);
    B0.diag.assign(nodes, 0.0);
    B0.off.assign(nodes - 1, 0.0);

    const auto gx = gauss_nodes(4);
    const auto gw = gauss_weights(4);

    for (int e = 0; e + 1 < nodes; ++e) {
        const double a = e * dt, b = a + dt;
        const double mid = 0.5 * (a + b), half = 0.5 * dt;
        const double k = 1.0 / dt; // exact P1 stiffness
        A.diag[e] += k;
        A.diag[e + 1] += k;
        A.off[e] -= k;
        double p00 = 0, p01 = 0, p11 = 0, m00 = 0, m01 = 0, m11 = 0;
        for (size_t g = 0; g < gx.size(); ++g) {
            const double t = mid + half * gx[g];
            const double w = half * gw[g];
            const double ph0 = (b - t) / dt, ph1 = (t - a) / dt;
            const double pv = mode_p(n, pb.mode_eigenvalue, t);
            const double mv = mass_density(n, pb.weight_kind, t);
            p00 += w * pv * ph0 * ph0;
            p01 += w * pv * ph0 * ph1;
            p11 += w * pv * ph1 * ph1;
            m00 += w * mv * ph0 * ph0;
            m01 += w * mv * ph0 * ph1;
            m11 += w * mv * ph1 * ph1;
        }
        A.diag[e] += p00;
        A.diag[e + 1] += p11;
        A.off[e] += p01;
        B.diag[e] += m00;
        B.diag[e + 1] += m11;
        B.off[e] += m01;
        B0.diag[e] += dt / 3.0;
        B0.diag[e + 1] += dt / 3.0;
        B0.off[e] += dt / 6.0;
    }

    // outer Dirichlet always; inner Dirichlet for the (D)-type pair
    const int lo = (pb.inner_bc == InnerBC::Dirichlet) ? 1 : 0;
    const int hi = nodes - 1;
    Assembled out;
    out.A.diag.assign(A.diag.begin() + lo, A.diag.begin() + hi);
    out.A.off.assign(A.off.begin() + lo, A.off.begin() + hi - 1);
    out.B.diag.assign(B.diag.begin() + lo, B.diag.begin() + hi);
    out.B.off.assign(B.off.begin() + lo, B.off.begin() + hi - 1);
    out.B_log.diag.assign(B0.diag.begin() + lo, B0.diag.begin() + hi);
    out.B_log.off.assign(B0.off.begin() + lo, B0.off.begin() + hi - 1);
    return out;
}

struct Counts {
    int neg = 0;
    int nonpos = 0;
    std::vector<double> smallest;
};

Counts count_once(const ModeProblem& pb, int nodes) {
    const Assembled sys = assemble_mode(pb, nodes);
    Counts c;
    c.neg = inertia_below(sys.A, sys.B, 0.0, /*strict=*/true);
    const int k = std::max(c.neg + 3, 6);
    c.smallest = smallest_eigenvalues(sys.A, sys.B, k);
    // Zero detection happens in the log normalization, where separated
    // eigenvalues carry the mode-sum scale; the weighted eigenvalues of
    // far-out modes are legitimately tiny and must not read as zeros.
    const auto anchored = smallest_eigenvalues(sys.A, sys.B_log, k);
    const double zero_band = 1e-8 * std::max(1.0, std::abs(anchored.front()));
    c.nonpos = c.neg;
    for (double ev : anchored)
        if (ev >= 0.0 && ev <= zero_band) ++c.nonpos;
    return c;
}

} // namespace

RadialGrid make_radial_grid(const SchwarzschildSpace& space, double R, int size) {
    if (!(R > space.R0))
        throw std::domain_error("make_radial_grid: outer radius must exceed R0");
    if (size < 16)
        throw std::domain_error("make_radial_grid: at least 16 nodes required");
    RadialGrid g;
    g.nodes.resize(size);
    const double T = std::log(R / space.R0);
    for (int i = 0; i < size; ++i)
        g.nodes[i] = space.R0 * std::exp(T * i / (size - 1));
    g.nodes.front() = space.R0;
    g.nodes.back() = R;
    return g;
}

ModeProblem make_mode_problem(const SchwarzschildSpace& space,
                              const MinimalLink& link, int k, double R,
                              InnerBC inner, OuterBC outer, WeightKind weight) {
    if (!(R > space.R0))
        throw std::domain_error("make_mode_problem: outer radius must exceed R0");
    if (k < 0) throw std::domain_error("make_mode_problem: negative level");
    if (link.ambient_n != space.n)
        throw std::domain_error("make_mode_problem: link dimension mismatch");
    const JacobiSpectrum spec = jacobi_spectrum(link, k + 1);
    ModeProblem pb;
    pb.space = space;
    pb.mode_eigenvalue = spec.eigenvalues[k];
    pb.level = k;
    pb.multiplicity = spec.multiplicities[k];
    pb.R = R;
    pb.inner_bc = inner;
    pb.outer_bc = outer;
    pb.weight_kind = weight;
    pb.link_label = link.label;
    return pb;
}

double IvpMode::value(double r) const {
    const double a = 0.5 * (n - 3);
    const double omega = j * M_PI / std::log(R / R0);
    const double th = omega * std::log(r / R0);
    return c * std::pow(r, -a) * std::sin(th);
}

double IvpMode::deriv(double r) const {
    const double a = 0.5 * (n - 3);
    const double omega = j * M_PI / std::log(R / R0);
    const double th = omega * std::log(r / R0);
    return c * std::pow(r, -a - 1.0) * (omega * std::cos(th) - a * std::sin(th));
}

double IvpMode::second_deriv(double r) const {
    const double a = 0.5 * (n - 3);
    const double omega = j * M_PI / std::log(R / R0);
    const double th = omega * std::log(r / R0);
    return c * std::pow(r, -a - 2.0) *
           ((a * (a + 1.0) - omega * omega) * std::sin(th) -
            omega * (2.0 * a + 1.0) * std::cos(th));
}

IvpMode ivp_mode(const SchwarzschildSpace& space, double R, int j) {
    if (!(R > space.R0)) throw std::domain_error("ivp_mode: outer radius must exceed R0");
    if (j < 1) throw std::domain_error("ivp_mode: mode number must be positive");
    const double T = std::log(R / space.R0);
    IvpMode m;
    m.j = j;
    m.n = space.n;
    m.R0 = space.R0;
    m.R = R;
    m.c = std::sqrt(2.0 / T);
    const double a = 0.5 * (space.n - 3);
    const double omega = j * M_PI / T;
    m.beta = a * a + omega * omega;
    return m;
}

double wk_potential(const SchwarzschildSpace& space, double lambda_k, double r) {
    const double margin = 4.0 * lambda_k + double(space.n - 2) * (space.n - 4);
    return radial_potential(space, r) - margin / (4.0 * r * r);
}

double closed_form_v(const SchwarzschildSpace& space, double r) {
    const int n = space.n;
    const double y = 2.0 * std::pow(r, n - 2.0);
    return std::pow(y / (space.m + y), 1.0 / (n - 2));
}

double closed_form_v_deriv(const SchwarzschildSpace& space, double r) {
    const int n = space.n;
    const double y = 2.0 * std::pow(r, n - 2.0);
    return 0.5 * space.m * std::pow(r, 1.0 - n) *
           std::pow(y / (space.m + y), 1.0 / (n - 2) + 1.0);
}

double closed_form_v_second_deriv(const SchwarzschildSpace& space, double r) {
    const int n = space.n;
    const double y = 2.0 * std::pow(r, n - 2.0);
    return -0.5 * (n - 1.0) * space.m * std::pow(r, -double(n)) *
           std::pow(y / (space.m + y), 1.0 / (n - 2) + 2.0);
}

FcCandidate fc_candidate(const SchwarzschildSpace& space, double r) {
    const int n = space.n;
    const double den = space.m + 2.0 * std::pow(r, n - 2.0);
    FcCandidate out;
    out.psi = 2.0 * std::pow(r, 0.5 * (n - 2)) / den;
    out.dpsi_dr = (n - 2.0) * std::pow(r, 0.5 * n - 2.0) *
                  (space.m - 2.0 * std::pow(r, n - 2.0)) / (den * den);
    return out;
}

bool mode_pointwise_positive(int n, double lambda_k) {
    const double gamma = 0.5 * (n - 3);
    return lambda_k + gamma * gamma >= 0.25 * (n - 1) - 1e-14;
}

ModeSpectrumResult count_negative(const ModeProblem& problem,
                                  const RadialGrid& grid) {
    if (problem.outer_bc != OuterBC::Dirichlet)
        throw std::invalid_argument("count_negative: outer condition must be Dirichlet");
    if (grid.size() < 16)
        throw std::domain_error("count_negative: grid too small");
    const double R0 = problem.space.R0;
    if (std::abs(grid.nodes.front() - R0) > 1e-9 * R0 ||
        std::abs(grid.nodes.back() - problem.R) > 1e-9 * problem.R)
        throw std::domain_error("count_negative: grid does not span the interval");

    const int nodes = static_cast<int>(grid.size());
    const Counts coarse = count_once(problem, nodes);
    const Counts fine = count_once(problem, 2 * nodes - 1);

    ModeSpectrumResult res;
    res.negative_count = coarse.neg;
    res.nonpositive_count = coarse.nonpos;
    res.smallest_eigenvalues = coarse.smallest;
    res.grid_size = nodes;
    res.refined = (coarse.neg == fine.neg && coarse.nonpos == fine.nonpos);
    return res;
}

namespace {

struct ShootState {
    double u = 1.0, v = 0.0; // v = du/dt
    double peak = 1.0;
};

// RK4 on  u'' + (n-3) u' + (q(t) - lambda_k) u = 0  in t = log(r/R0),
// started from the horizon Robin data u(0)=1, u'(0) = -(n-3)/2.
ShootState shoot(const ModeProblem& pb, int steps) {
    const int n = pb.space.n;
    const double lam = pb.mode_eigenvalue;
    const double T = std::log(pb.R / pb.space.R0);
    const double h = T / steps;
    const auto rhs = [&](double t, double u, double v, double& du, double& dv) {
        du = v;
        dv = -(n - 3.0) * v - (mode_q(n, t) - lam) * u;
    };
    ShootState s;
    s.u = 1.0;
    s.v = -0.5 * (n - 3.0);
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        rhs(t, s.u, s.v, k1u, k1v);
        rhs(t + 0.5 * h, s.u + 0.5 * h * k1u, s.v + 0.5 * h * k1v, k2u, k2v);
        rhs(t + 0.5 * h, s.u + 0.5 * h * k2u, s.v + 0.5 * h * k2v, k3u, k3v);
        rhs(t + h, s.u + h * k3u, s.v + h * k3v, k4u, k4v);
        s.u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        s.v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        t += h;
        const double mag = std::max(std::abs(s.u), std::abs(s.v));
        s.peak = std::max(s.peak, std::abs(s.u));
        if (mag > 1e100) { // quotient is scale-invariant
            s.u /= mag;
            s.v /= mag;
            s.peak = std::max(std::abs(s.u), 1e-100);
        }
    }
    return s;
}

double quotient_at_R(const ModeProblem& pb, const ShootState& s) {
    const int n = pb.space.n;
    const double X = pb.R / pb.space.R0;
    // log-derivative of the curved-picture unknown w = F^{-1} u
    const double dlogF = -(n - 3.0) / (std::pow(X, n - 2.0) + 1.0);
    const double wquot = s.v / s.u - dlogF;
    const double denom = X * scaled::isotropic_factor(n, X) * scaled::umbilicity(n, X);
    return wquot / denom;
}

} // namespace

SteklovResult steklov_value(const ModeProblem& problem) {
    if (problem.outer_bc != OuterBC::Steklov)
        throw std::invalid_argument("steklov_value: outer condition must be Steklov");
    if (problem.inner_bc != InnerBC::SchwarzschildNeumann)
        throw std::invalid_argument("steklov_value: horizon condition must be Neumann");

    const double T = std::log(problem.R / problem.space.R0);
    const int steps = std::max(20000, static_cast<int>(1500.0 * T));

    const ShootState a = shoot(problem, steps);
    const ShootState b = shoot(problem, 2 * steps);

    SteklovResult out;
    if (std::abs(a.u) <= 1e-11 * a.peak || std::abs(b.u) <= 1e-11 * b.peak) {
        out.degenerate = true;
        return out;
    }
    const double va = quotient_at_R(problem, a);
    const double vb = quotient_at_R(problem, b);
    out.value = vb;
    out.two_integrator_ok =
        std::abs(va - vb) <= 1e-8 * std::max(1.0, std::abs(vb));
    return out;
}

} // namespace coneindex
