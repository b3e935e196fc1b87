#include "coneindex/density.hpp"

#include "coneindex/errors.hpp"
#include "coneindex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace coneindex {

namespace {

constexpr double kWillmoreThreshold = 2.0 * std::numbers::pi * std::numbers::pi;
constexpr double kSlack = 1e-8;

void check_rho(const ArealProfile& profile, double rho, const char* op) {
    if (rho < 0.0 || rho > profile.r_max() * (1.0 + 1e-12))
        throw std::domain_error(std::string(op) + ": radius outside profile range");
}

// Integrate f over [0, rho] panel-by-panel on the profile grid so the
// piecewise-cubic interpolant is polynomial on every panel; a 20-node
// rule is exact through degree 39.
double profile_quadrature(const ArealProfile& profile, double rho,
                          const std::function<double(double)>& f) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < profile.grid.size() && profile.grid[i] < rho; ++i) {
        const double a = profile.grid[i];
        const double b = std::min(profile.grid[i + 1], rho);
        if (b <= a) continue;
        total += gauss_legendre(f, a, b, 20);
    }
    return total;
}

} // namespace

double mu_volume(const SchwarzschildSpace& space, const MinimalLink& link,
                 const ArealProfile& profile, double rho) {
    (void)space;
    check_rho(profile, rho, "mu_volume");
    return link.volume * profile_quadrature(profile, rho, [&](double r) {
               return profile.hprime(r) * std::pow(profile.h(r), profile.n - 2.0);
           });
}

double cone_volume(const SchwarzschildSpace& space, const MinimalLink& link,
                   const ArealProfile& profile, double rho) {
    (void)space;
    check_rho(profile, rho, "cone_volume");
    return link.volume * profile_quadrature(profile, rho, [&](double r) {
               return std::pow(profile.h(r), profile.n - 2.0);
           });
}

ThetaResult theta(const SchwarzschildSpace& space, const MinimalLink& subject,
                  const MinimalLink& reference, const ArealProfile& profile,
                  const std::vector<double>& rho_ladder) {
    if (rho_ladder.empty()) throw std::domain_error("theta: empty ladder");
    for (size_t i = 1; i < rho_ladder.size(); ++i)
        if (rho_ladder[i] <= rho_ladder[i - 1])
            throw std::domain_error("theta: ladder must be increasing");

    ThetaResult out;
    out.rungs = rho_ladder;
    for (double rho : rho_ladder) {
        const double vs = cone_volume(space, subject, profile, rho);
        const double vr = cone_volume(space, reference, profile, rho);
        out.values.push_back(vs / vr);
    }

    // Richardson tail: estimate the contraction of successive differences
    // and sum the geometric remainder. A flat tail falls back to the last
    // rung.
    const size_t k = out.values.size();
    out.extrapolated = out.values.back();
    if (k >= 3) {
        const double d1 = out.values[k - 2] - out.values[k - 3];
        const double d2 = out.values[k - 1] - out.values[k - 2];
        const double scale = std::max(1.0, std::abs(out.values.back()));
        if (std::abs(d2) > 1e-14 * scale && std::abs(d1) > std::abs(d2)) {
            const double q = d2 / d1;
            out.extrapolated = out.values.back() + d2 * q / (1.0 - q);
        }
    }
    return out;
}

double theta_closed(const SchwarzschildSpace& space, const MinimalLink& subject,
                    const MinimalLink& reference) {
    return boundary_area(space, subject) / (2.0 * space.m * reference.volume);
}

double boundary_area(const SchwarzschildSpace& space, const MinimalLink& link) {
    return 2.0 * space.m * link.volume;
}

double boundary_area_isotropic_route(const SchwarzschildSpace& space,
                                     const MinimalLink& link) {
    const double radius = space.R0 * isotropic_factor(space, space.R0);
    return std::pow(radius, space.n - 2.0) * link.volume;
}

double monotonicity_residual(const SchwarzschildSpace& space,
                             const MinimalLink& link,
                             const ArealProfile& profile, double sigma,
                             double rho) {
    check_rho(profile, rho, "monotonicity_residual");
    if (sigma < 0.0 || sigma > rho)
        throw std::domain_error("monotonicity_residual: need 0 <= sigma <= rho");
    const double n1 = space.n - 1.0;
    const double hr = profile.h(rho), hs = profile.h(sigma);
    const double lhs = mu_volume(space, link, profile, rho) / std::pow(hr, n1);
    const double rhs = mu_volume(space, link, profile, sigma) / std::pow(hs, n1) +
                       space.s0 / n1 *
                           (std::pow(hs, -n1) - std::pow(hr, -n1)) *
                           boundary_area(space, link);
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

RigidityResult rigidity_classify(const SchwarzschildSpace& space,
                                 const MinimalLink& subject, double theta,
                                 const MinimalLink& reference) {
    if (!std::isfinite(theta))
        throw std::domain_error("rigidity_classify: theta must be finite");
    RigidityResult out;

    const double bound = 2.0 * space.m * reference.volume * theta;
    const double area = boundary_area(space, subject);
    const double scale = std::max({std::abs(bound), std::abs(area), 1.0});
    out.rigidity = (std::abs(bound - area) <= kSlack * scale)
                       ? RigidityClass::EqualityCone
                       : RigidityClass::StrictInequality;

    if (space.n == 4) {
        const double value = reference.volume * theta; // |Gamma| theta
        const double wscale = std::max(value, kWillmoreThreshold);
        if (value <= kWillmoreThreshold - kSlack * wscale) {
            out.willmore = WillmoreFlag::BelowThreshold;
            if (out.rigidity == RigidityClass::EqualityCone)
                out.note = "equality below the threshold: round link or Clifford torus";
        } else {
            out.willmore = WillmoreFlag::AboveThreshold;
            if (std::abs(value - kWillmoreThreshold) <= kSlack * wscale) {
                out.boundary_case = true;
                out.note = "threshold tie reported on the non-rigid side";
            }
        }
    } else {
        out.willmore = WillmoreFlag::NotApplicable;
    }
    out.allard = AllardFlag::Indeterminate;
    return out;
}

DensityReport density_report(const SchwarzschildSpace& space,
                             const MinimalLink& subject,
                             const MinimalLink& reference,
                             const ArealProfile& profile,
                             const std::vector<double>& rho_ladder) {
    DensityReport rep;
    rep.n = space.n;
    rep.m = space.m;
    rep.subject_label = subject.label;
    rep.reference_label = reference.label;
    rep.rho_ladder = rho_ladder;

    const ThetaResult th = theta(space, subject, reference, profile, rho_ladder);
    rep.theta_rungs = th.values;
    rep.theta_numeric = th.extrapolated;
    rep.theta_closed = theta_closed(space, subject, reference);
    rep.boundary_area = boundary_area(space, subject);

    const double mid = rho_ladder.front() +
                       0.25 * (rho_ladder.back() - rho_ladder.front());
    rep.monotonicity_residual =
        monotonicity_residual(space, subject, profile, mid, rho_ladder.back());

    rep.equality_gap =
        2.0 * space.m * reference.volume * rep.theta_numeric - rep.boundary_area;

    const RigidityResult rig =
        rigidity_classify(space, subject, rep.theta_numeric, reference);
    rep.rigidity_class = rig.rigidity;
    rep.willmore_flag = rig.willmore;
    rep.allard_flag = rig.allard;
    rep.boundary_case = rig.boundary_case;
    rep.notes = rig.note;
    if (subject.kind == LinkKind::Raw || reference.kind == LinkKind::Raw) {
        if (!rep.notes.empty()) rep.notes += "; ";
        rep.notes += "raw link data supplied by the user, not verified";
    }
    return rep;
}

const char* to_string(RigidityClass c) {
    return c == RigidityClass::EqualityCone ? "EqualityCone" : "StrictInequality";
}

const char* to_string(WillmoreFlag f) {
    switch (f) {
    case WillmoreFlag::BelowThreshold: return "BelowThreshold";
    case WillmoreFlag::AboveThreshold: return "AboveThreshold";
    case WillmoreFlag::NotApplicable: return "NotApplicable";
    }
    return "?";
}

const char* to_string(AllardFlag) { return "Indeterminate"; }

nlohmann::json to_json(const DensityReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"m", r.m},
                     {"subject", r.subject_label},
                     {"reference", r.reference_label},
                     {"theta_numeric", r.theta_numeric},
                     {"theta_closed", r.theta_closed},
                     {"boundary_area", r.boundary_area},
                     {"monotonicity_residual", r.monotonicity_residual},
                     {"equality_gap", r.equality_gap},
                     {"rigidity_class", to_string(r.rigidity_class)},
                     {"willmore_flag", to_string(r.willmore_flag)},
                     {"allard_flag", to_string(r.allard_flag)},
                     {"boundary_case", r.boundary_case},
                     {"rho_ladder", r.rho_ladder},
                     {"theta_rungs", r.theta_rungs}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

std::string density_csv_header() {
    return "n,m,subject,reference,theta_numeric,theta_closed,boundary_area,"
           "monotonicity_residual,equality_gap,rigidity,willmore,allard";
}

std::string density_csv_row(const DensityReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%d,%.12g,%s,%s,%.12g,%.12g,%.12g,%.3g,%.3g,%s,%s,%s", r.n,
                  r.m, r.subject_label.c_str(), r.reference_label.c_str(),
                  r.theta_numeric, r.theta_closed, r.boundary_area,
                  r.monotonicity_residual, r.equality_gap,
                  to_string(r.rigidity_class), to_string(r.willmore_flag),
                  to_string(r.allard_flag));
    return buf;
}

} // namespace coneindex
