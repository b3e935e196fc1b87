#pragma once

#include "coneindex/links.hpp"
#include "coneindex/radial.hpp"
#include "coneindex/schwarzschild.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace coneindex {

enum class BoundaryClass { VanishBoth, VanishOuterOnly };

// A separated test function f_k(p) u(r) on the truncated cone. The link
// factor is the level-k Jacobi eigenfunction, normalized to unit L^2 norm
// on the link; only the radial profile is represented explicitly, as a
// function of the physical radius r in [R0, R].
struct SeparatedTestFunction {
    int link_level = 0;
    BoundaryClass boundary_class = BoundaryClass::VanishBoth;
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    // Set when the profile is the j-th closed-form Dirichlet mode; the
    // flat form is then evaluated exactly.
    std::optional<int> ivp_j;
};

// Profile g_j at link level k, vanishing at both ends of [R0, R].
SeparatedTestFunction ivp_test_function(const SchwarzschildSpace& space,
                                        const MinimalLink& link, int k,
                                        double R, int j);

// Flat index form on a separated test function vanishing at both ends:
//   Q_delta = int (u'^2 + lambda_k u^2 / r^2) r^{n-2} dr.
// For closed-form modes this is lambda_k + beta_j exactly; otherwise
// adaptive quadrature.
double q_delta(const SchwarzschildSpace& space, const MinimalLink& link,
               const SeparatedTestFunction& psi, double R);

// Curved index form evaluated through the conformal identity:
//   Q_g(F^{-1} psi) = Q_delta(psi)
//       - (n-1) m int 2 r^{n-4} / (m + 2 r^{n-2})^2 psi^2 ddelta.
double q_schwarzschild(const SchwarzschildSpace& space, const MinimalLink& link,
                       const SeparatedTestFunction& psi, double R);

// Same quantity assembled in one pass with the potential folded in:
//   int (u'^2 + (lambda_k / r^2 - V) u^2) r^{n-2} dr.
// Independent check of q_schwarzschild.
double q_schwarzschild_direct(const SchwarzschildSpace& space,
                              const MinimalLink& link,
                              const SeparatedTestFunction& psi, double R);

// Normalized disagreement of the two conformal routes to the curved form:
// the curved-picture assembly on F^{-1} psi versus the flat form plus the
// (N/(N-2)) F^{-1} Lap F correction.
double conformal_residual(const SchwarzschildSpace& space,
                          const MinimalLink& link,
                          const SeparatedTestFunction& psi, double R);

// a(R) = (n-2) log(R/R0) / (2 pi).
double log_gap_a(const SchwarzschildSpace& space, double R);

// G_j(R) = ((n-2) j / (2 a(R)))^2
//          - ((n-1) j / (2 pi)) int_0^pi sech^2(a(R) j s) sin^2 s ds,
// the finite-radius correction in the witness values; G_j -> 0 as R grows.
double g_term(const SchwarzschildSpace& space, double R, int j);

// lambda_1(Gamma) + ((n-3)/2)^2 + G_j(R). A value below zero certifies a
// negative direction of the curved form with Dirichlet data at radius R.
double witness_value(const SchwarzschildSpace& space, const MinimalLink& link,
                     int j, double R);

enum class DivergenceVerdict { Stable, FiniteAtThisR, DivergentTrend };

struct ModeRow {
    int level = 0;
    double lambda_k = 0.0;
    int multiplicity = 1;
    bool skipped_analytic = false;
    int negative_D = 0, nonpositive_D = 0;
    int negative_F = 0, nonpositive_F = 0;
    bool refined_D = true, refined_F = true;
    bool steklov_degenerate = false;
    double steklov = 0.0;
    bool steklov_below_one = false;
    bool steklov_at_threshold = false;
};

struct IndexReport {
    int n = 0;
    double m = 0.0;
    std::string link_label;
    double R = 0.0;
    double R_over_R0 = 0.0;
    int k_max = 0;
    int grid_size = 0;
    std::vector<ModeRow> per_mode;
    int ind_D = 0;
    int null_D = 0;
    int ind_F = 0;
    int ind_R = 0;
    int ind_M = 0;
    bool refined = true;
    bool any_degenerate = false;
    DivergenceVerdict verdict = DivergenceVerdict::Stable;
    std::vector<double> ladder_R;
    std::vector<int> ladder_ind_D;
    std::string notes;
};

// Runs the Dirichlet and horizon-Neumann counts plus the boundary
// eigenvalue for every link level below k_max, aggregates with level
// multiplicities, and classifies the trend of ind_D along the internal
// log-geometric ladder {R0 (R/R0)^{1/4}, R0 (R/R0)^{1/2}, R}.
IndexReport index_report(const SchwarzschildSpace& space,
                         const MinimalLink& link, double R, int k_max,
                         int grid_size);

const char* to_string(DivergenceVerdict v);
nlohmann::json to_json(const IndexReport& report);
std::string index_csv_header();
std::string index_csv_row(const IndexReport& report);

} // namespace coneindex
