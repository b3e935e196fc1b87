#pragma once

#include "coneindex/links.hpp"
#include "coneindex/schwarzschild.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace coneindex {

enum class RigidityClass { EqualityCone, StrictInequality };
enum class WillmoreFlag { BelowThreshold, AboveThreshold, NotApplicable };
enum class AllardFlag { Indeterminate };

// Weighted content of the cone over the link inside the geodesic ball of
// radius rho (distance to the horizon), with the static-potential weight:
//   mu = |Gamma| int_0^rho h'(r) h(r)^{n-2} dr.
// Matches |Gamma| (h^{n-1}(rho) - s0^{n-1}) / (n-1), the integrand being
// an exact derivative of the interpolant.
double mu_volume(const SchwarzschildSpace& space, const MinimalLink& link,
                 const ArealProfile& profile, double rho);

// Unweighted volume of the truncated cone inside B_rho:
//   |Gamma| int_0^rho h(r)^{n-2} dr.
double cone_volume(const SchwarzschildSpace& space, const MinimalLink& link,
                   const ArealProfile& profile, double rho);

// Volume ratios subject/reference per ladder rung with a Richardson
// extrapolation of the tail. For cones every rung equals the ratio of the
// link volumes.
struct ThetaResult {
    std::vector<double> rungs;
    std::vector<double> values;
    double extrapolated = 0.0;
};

ThetaResult theta(const SchwarzschildSpace& space, const MinimalLink& subject,
                  const MinimalLink& reference, const ArealProfile& profile,
                  const std::vector<double>& rho_ladder);

// Closed-form density of a cone subject: area(boundary) / (2 m |Gamma|).
double theta_closed(const SchwarzschildSpace& space, const MinimalLink& subject,
                    const MinimalLink& reference);

// Boundary content of the truncated cone, 2 m |Gamma|.
double boundary_area(const SchwarzschildSpace& space, const MinimalLink& link);
// Same quantity through the isotropic chart: (R0 f(R0))^{n-2} |Gamma|.
double boundary_area_isotropic_route(const SchwarzschildSpace& space,
                                     const MinimalLink& link);

// Normalized defect of the weighted-content identity between radii
// sigma < rho (the perpendicular term vanishes on cones):
//   mu(B_rho)/h^{n-1}(rho) = mu(B_sigma)/h^{n-1}(sigma)
//     + s0/(n-1) (h^{1-n}(sigma) - h^{1-n}(rho)) area(boundary).
double monotonicity_residual(const SchwarzschildSpace& space,
                             const MinimalLink& link,
                             const ArealProfile& profile, double sigma,
                             double rho);

struct RigidityResult {
    RigidityClass rigidity = RigidityClass::EqualityCone;
    WillmoreFlag willmore = WillmoreFlag::NotApplicable;
    AllardFlag allard = AllardFlag::Indeterminate;
    bool boundary_case = false;
    std::string note;
};

// Equality classification of area(boundary) vs 2 m |Gamma| theta, plus
// the n = 4 threshold test of |Gamma| theta against 2 pi^2. Thresholds
// use absolute slack 1e-8 * scale; exact ties report the non-rigid side
// with boundary_case set.
RigidityResult rigidity_classify(const SchwarzschildSpace& space,
                                 const MinimalLink& subject, double theta,
                                 const MinimalLink& reference);

struct DensityReport {
    int n = 0;
    double m = 0.0;
    std::string subject_label;
    std::string reference_label;
    double theta_numeric = 0.0;
    double theta_closed = 0.0;
    double boundary_area = 0.0;
    double monotonicity_residual = 0.0;
    double equality_gap = 0.0; // 2 m |Gamma| theta - area(boundary)
    RigidityClass rigidity_class = RigidityClass::EqualityCone;
    WillmoreFlag willmore_flag = WillmoreFlag::NotApplicable;
    AllardFlag allard_flag = AllardFlag::Indeterminate;
    bool boundary_case = false;
    std::vector<double> rho_ladder;
    std::vector<double> theta_rungs;
    std::string notes;
};

DensityReport density_report(const SchwarzschildSpace& space,
                             const MinimalLink& subject,
                             const MinimalLink& reference,
                             const ArealProfile& profile,
                             const std::vector<double>& rho_ladder);

const char* to_string(RigidityClass c);
const char* to_string(WillmoreFlag f);
const char* to_string(AllardFlag f);
nlohmann::json to_json(const DensityReport& report);
std::string density_csv_header();
std::string density_csv_row(const DensityReport& report);

} // namespace coneindex
