#include "coneindex/index_forms.hpp"

#include "coneindex/errors.hpp"
#include "coneindex/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace coneindex {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-10;
constexpr long kQuadCap = 1L << 20;
// Comparison band for the boundary eigenvalue against the threshold 1.
// Congruence modes (ambient rotations) sit exactly at the threshold and
// must not flip the count with roundoff.
constexpr double kSteklovTol = 1e-9;

// Integral over [R0, R] in the substitution t = log(r/R0); keeps adaptive
// panels balanced when R spans many decades.
double integrate_radial(const std::function<double(double)>& f, double R0,
                        double R, double tol = kQuadTol) {
    const double T = std::log(R / R0);
    return adaptive_simpson(
        [&](double t) {
            const double r = R0 * std::exp(t);
            return f(r) * r;
        },
        0.0, T, tol, kQuadCap);
}

double mode_eigenvalue_of(const MinimalLink& link, int level) {
    return jacobi_spectrum(link, level + 1).eigenvalues[level];
}

void require_vanish_both(const SeparatedTestFunction& psi, double R0, double R) {
    if (psi.boundary_class != BoundaryClass::VanishBoth)
        throw std::invalid_argument("index form: profile must vanish at both ends");
    double scale = 1e-300;
    for (int i = 1; i < 8; ++i)
        scale = std::max(scale, std::abs(psi.value(R0 + (R - R0) * i / 8.0)));
    if (std::abs(psi.value(R0)) > 1e-10 * scale ||
        std::abs(psi.value(R)) > 1e-10 * scale)
        throw std::invalid_argument("index form: profile does not vanish at the ends");
}

} // namespace

SeparatedTestFunction ivp_test_function(const SchwarzschildSpace& space,
                                        const MinimalLink& link, int k,
                                        double R, int j) {
    (void)mode_eigenvalue_of(link, k); // validates the level
    const IvpMode mode = ivp_mode(space, R, j);
    SeparatedTestFunction psi;
    psi.link_level = k;
    psi.boundary_class = BoundaryClass::VanishBoth;
    psi.value = [mode](double r) { return mode.value(r); };
    psi.deriv = [mode](double r) { return mode.deriv(r); };
    psi.ivp_j = j;
    return psi;
}

double q_delta(const SchwarzschildSpace& space, const MinimalLink& link,
               const SeparatedTestFunction& psi, double R) {
    require_vanish_both(psi, space.R0, R);
    const double lam = mode_eigenvalue_of(link, psi.link_level);
    if (psi.ivp_j)
        return lam + ivp_mode(space, R, *psi.ivp_j).beta;
    const double Nm1 = space.N - 1.0; // = n - 2
    return integrate_radial(
        [&](double r) {
            const double u = psi.value(r), du = psi.deriv(r);
            return (du * du + lam * u * u / (r * r)) * std::pow(r, Nm1);
        },
        space.R0, R);
}

namespace {

// (n-1) m int 2 r^{n-4} / (m + 2 r^{n-2})^2 psi^2 r^{n-2} dr
double lemma_correction(const SchwarzschildSpace& space,
                        const SeparatedTestFunction& psi, double R) {
    const int n = space.n;
    return (n - 1.0) * space.m *
           integrate_radial(
               [&](double r) {
                   const double u = psi.value(r);
                   const double den = space.m + 2.0 * std::pow(r, n - 2.0);
                   return 2.0 * std::pow(r, n - 4.0) / (den * den) * u * u *
                          std::pow(r, n - 2.0);
               },
               space.R0, R);
}

} // namespace

double q_schwarzschild(const SchwarzschildSpace& space, const MinimalLink& link,
                       const SeparatedTestFunction& psi, double R) {
    require_vanish_both(psi, space.R0, R);
    return q_delta(space, link, psi, R) - lemma_correction(space, psi, R);
}

double q_schwarzschild_direct(const SchwarzschildSpace& space,
                              const MinimalLink& link,
                              const SeparatedTestFunction& psi, double R) {
    require_vanish_both(psi, space.R0, R);
    const double lam = mode_eigenvalue_of(link, psi.link_level);
    const double Nm1 = space.N - 1.0;
    return integrate_radial(
        [&](double r) {
            const double u = psi.value(r), du = psi.deriv(r);
            const double V = radial_potential(space, r);
            return (du * du + (lam / (r * r) - V) * u * u) * std::pow(r, Nm1);
        },
        space.R0, R);
}

double conformal_residual(const SchwarzschildSpace& space,
                          const MinimalLink& link,
                          const SeparatedTestFunction& psi, double R) {
    require_vanish_both(psi, space.R0, R);
    const double lam = mode_eigenvalue_of(link, psi.link_level);
    const int n = space.n;
    const double N = space.N;
    const double Nm1 = N - 1.0;

    // Curved-picture assembly on F^{-1} psi: the first fundamental form
    // contributes (u' - (log F)' u)^2, and the scalar-curvature share of
    // the potential carries the factor 2(N-1)/N relative to V.
    const double lhs = integrate_radial(
        [&](double r) {
            const double u = psi.value(r), du = psi.deriv(r);
            const double g = scaled::dlog_cone_factor(n, r / space.R0) / space.R0;
            const double V = radial_potential(space, r);
            const double conf = du - g * u;
            return (conf * conf + lam * u * u / (r * r) -
                    2.0 * (N - 1.0) / N * V * u * u) *
                   std::pow(r, Nm1);
        },
        space.R0, R);

    const double rhs = integrate_radial(
        [&](double r) {
            const double u = psi.value(r), du = psi.deriv(r);
            const double V = radial_potential(space, r);
            return (du * du + (lam / (r * r) - V) * u * u) * std::pow(r, Nm1);
        },
        space.R0, R);

    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

double log_gap_a(const SchwarzschildSpace& space, double R) {
    if (!(R > space.R0))
        throw std::domain_error("log_gap_a: outer radius must exceed R0");
    return (space.n - 2.0) * std::log(R / space.R0) / (2.0 * kPi);
}

double g_term(const SchwarzschildSpace& space, double R, int j) {
    if (j < 1) throw std::domain_error("g_term: mode number must be positive");
    const double a = log_gap_a(space, R);
    const int n = space.n;
    const double first = std::pow((n - 2.0) * j / (2.0 * a), 2);
    const double integral = adaptive_simpson(
        [&](double s) {
            const double c = std::cosh(a * j * s);
            const double si = std::sin(s);
            return si * si / (c * c);
        },
        0.0, kPi, 1e-10, kQuadCap);
    return first - (n - 1.0) * j / (2.0 * kPi) * integral;
}

double witness_value(const SchwarzschildSpace& space, const MinimalLink& link,
                     int j, double R) {
    const double gamma = 0.5 * (space.n - 3.0);
    return link_lambda1(link) + gamma * gamma + g_term(space, R, j);
}

namespace {

// Dirichlet nonpositive count aggregated over levels, used for the trend
// ladder. Analytic skips need no assembly.
int ladder_ind_D(const SchwarzschildSpace& space, const MinimalLink& link,
                 const JacobiSpectrum& spec, double R, int grid_size) {
    int total = 0;
    for (size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        if (mode_pointwise_positive(space.n, spec.eigenvalues[k])) continue;
        ModeProblem pb;
        pb.space = space;
        pb.mode_eigenvalue = spec.eigenvalues[k];
        pb.level = static_cast<int>(k);
        pb.multiplicity = spec.multiplicities[k];
        pb.R = R;
        pb.inner_bc = InnerBC::Dirichlet;
        pb.outer_bc = OuterBC::Dirichlet;
        pb.link_label = link.label;
        const ModeSpectrumResult res =
            count_negative(pb, make_radial_grid(space, R, grid_size));
        total += spec.multiplicities[k] * res.nonpositive_count;
    }
    return total;
}

} // namespace

IndexReport index_report(const SchwarzschildSpace& space,
                         const MinimalLink& link, double R, int k_max,
                         int grid_size) {
    if (!(R > space.R0))
        throw std::domain_error("index_report: outer radius must exceed R0");
    if (k_max < 1) throw std::domain_error("index_report: k_max must be positive");
    if (link.ambient_n != space.n)
        throw std::domain_error("index_report: link dimension mismatch");

    const JacobiSpectrum spec = jacobi_spectrum(link, k_max);
    const RadialGrid grid = make_radial_grid(space, R, grid_size);

    IndexReport rep;
    rep.n = space.n;
    rep.m = space.m;
    rep.link_label = link.label;
    rep.R = R;
    rep.R_over_R0 = R / space.R0;
    rep.k_max = k_max;
    rep.grid_size = grid_size;
    if (link.kind == LinkKind::Raw)
        rep.notes = "raw link: first Jacobi eigenvalue supplied by the user, "
                    "minimality not verified";

    for (int k = 0; k < k_max; ++k) {
        ModeRow row;
        row.level = k;
        row.lambda_k = spec.eigenvalues[k];
        row.multiplicity = spec.multiplicities[k];

        const auto problem = [&](InnerBC inner, OuterBC outer) {
            ModeProblem pb;
            pb.space = space;
            pb.mode_eigenvalue = row.lambda_k;
            pb.level = k;
            pb.multiplicity = row.multiplicity;
            pb.R = R;
            pb.inner_bc = inner;
            pb.outer_bc = outer;
            pb.link_label = link.label;
            return pb;
        };

        if (mode_pointwise_positive(space.n, row.lambda_k)) {
            row.skipped_analytic = true;
        } else {
            try {
                const ModeSpectrumResult d =
                    count_negative(problem(InnerBC::Dirichlet, OuterBC::Dirichlet), grid);
                const ModeSpectrumResult f = count_negative(
                    problem(InnerBC::SchwarzschildNeumann, OuterBC::Dirichlet), grid);
                row.negative_D = d.negative_count;
                row.nonpositive_D = d.nonpositive_count;
                row.refined_D = d.refined;
                row.negative_F = f.negative_count;
                row.nonpositive_F = f.nonpositive_count;
                row.refined_F = f.refined;
            } catch (const NumericError& e) {
                throw NumericError("index_report",
                                   "level " + std::to_string(k) + " of " +
                                       link.label + ": " + e.what());
            }
        }

        const SteklovResult st =
            steklov_value(problem(InnerBC::SchwarzschildNeumann, OuterBC::Steklov));
        row.steklov_degenerate = st.degenerate;
        if (!st.degenerate) {
            row.steklov = st.value;
            row.steklov_at_threshold =
                std::abs(st.value - 1.0) <= kSteklovTol * std::max(1.0, std::abs(st.value));
            row.steklov_below_one =
                !row.steklov_at_threshold && st.value < 1.0;
        }

        rep.per_mode.push_back(row);
        rep.ind_D += row.multiplicity * row.nonpositive_D;
        rep.null_D += row.multiplicity * (row.nonpositive_D - row.negative_D);
        rep.ind_F += row.multiplicity * row.negative_F;
        if (row.steklov_below_one) rep.ind_R += row.multiplicity;
        rep.any_degenerate = rep.any_degenerate || row.steklov_degenerate;
        rep.refined = rep.refined && row.refined_D && row.refined_F;
    }
    rep.ind_M = rep.ind_D + rep.null_D + rep.ind_R;

    // Trend of ind_D along log-geometric rungs up to R.
    const double X = R / space.R0;
    rep.ladder_R = {space.R0 * std::pow(X, 0.25), space.R0 * std::sqrt(X), R};
    for (double rung : rep.ladder_R)
        rep.ladder_ind_D.push_back(
            ladder_ind_D(space, link, spec, rung, grid_size));

    const bool divergent = rep.ladder_ind_D[0] < rep.ladder_ind_D[1] &&
                           rep.ladder_ind_D[1] < rep.ladder_ind_D[2];
    if (divergent)
        rep.verdict = DivergenceVerdict::DivergentTrend;
    else if (rep.ind_F == 0)
        rep.verdict = DivergenceVerdict::Stable;
    else
        rep.verdict = DivergenceVerdict::FiniteAtThisR;
    return rep;
}

const char* to_string(DivergenceVerdict v) {
    switch (v) {
    case DivergenceVerdict::Stable: return "Stable";
    case DivergenceVerdict::FiniteAtThisR: return "FiniteAtThisR";
    case DivergenceVerdict::DivergentTrend: return "DivergentTrend";
    }
    return "?";
}

nlohmann::json to_json(const IndexReport& r) {
    nlohmann::json modes = nlohmann::json::array();
    for (const ModeRow& row : r.per_mode) {
        modes.push_back({{"level", row.level},
                         {"lambda_k", row.lambda_k},
                         {"multiplicity", row.multiplicity},
                         {"skipped_analytic", row.skipped_analytic},
                         {"negative_D", row.negative_D},
                         {"nonpositive_D", row.nonpositive_D},
                         {"negative_F", row.negative_F},
                         {"nonpositive_F", row.nonpositive_F},
                         {"refined_D", row.refined_D},
                         {"refined_F", row.refined_F},
                         {"steklov_degenerate", row.steklov_degenerate},
                         {"steklov", row.steklov},
                         {"steklov_below_one", row.steklov_below_one},
                         {"steklov_at_threshold", row.steklov_at_threshold}});
    }
    nlohmann::json j{{"n", r.n},
                     {"m", r.m},
                     {"link", r.link_label},
                     {"R", r.R},
                     {"R_over_R0", r.R_over_R0},
                     {"k_max", r.k_max},
                     {"grid_size", r.grid_size},
                     {"per_mode", modes},
                     {"ind_D", r.ind_D},
                     {"null_D", r.null_D},
                     {"ind_F", r.ind_F},
                     {"ind_R", r.ind_R},
                     {"ind_M", r.ind_M},
                     {"refined", r.refined},
                     {"any_degenerate", r.any_degenerate},
                     {"verdict", to_string(r.verdict)},
                     {"ladder_R", r.ladder_R},
                     {"ladder_ind_D", r.ladder_ind_D}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

std::string index_csv_header() {
    return "n,m,link,R_over_R0,ind_D,ind_F,ind_R,ind_M,verdict";
}

std::string index_csv_row(const IndexReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.12g,%s,%.12g,%d,%d,%d,%d,%s", r.n, r.m,
                  r.link_label.c_str(), r.R_over_R0, r.ind_D, r.ind_F, r.ind_R,
                  r.ind_M, to_string(r.verdict));
    return buf;
}

} // namespace coneindex
