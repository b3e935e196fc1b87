#pragma once

#include "coneindex/links.hpp"
#include "coneindex/schwarzschild.hpp"

#include <string>
#include <vector>

namespace coneindex {

enum class InnerBC { Dirichlet, SchwarzschildNeumann };
enum class OuterBC { Dirichlet, Steklov };
enum class WeightKind { Euclidean, SchwarzschildWeight };

// Log-spaced nodes on [R0, R]; first node R0, last node R.
struct RadialGrid {
    std::vector<double> nodes;
    size_t size() const { return nodes.size(); }
};

RadialGrid make_radial_grid(const SchwarzschildSpace& space, double R, int size);

// One separated radial eigenvalue problem: a fixed link level (its Jacobi
// eigenvalue and multiplicity), the annulus [R0, R], and the boundary
// pair. SchwarzschildNeumann at the horizon means the vanishing normal
// derivative of the curved-picture unknown w; in the flat-picture unknown
// v = F w it is the Robin condition v'(R0) + ((n-3)/(2 R0)) v(R0) = 0,
// from F'(R0)/F(R0) = -(n-3)/(2 R0).
struct ModeProblem {
    SchwarzschildSpace space;
    double mode_eigenvalue = 0.0; // lambda_k(Gamma)
    int level = 0;
    int multiplicity = 1;
    double R = 0.0;
    InnerBC inner_bc = InnerBC::SchwarzschildNeumann;
    OuterBC outer_bc = OuterBC::Dirichlet;
    WeightKind weight_kind = WeightKind::SchwarzschildWeight;
    std::string link_label;
};

ModeProblem make_mode_problem(const SchwarzschildSpace& space,
                              const MinimalLink& link, int k, double R,
                              InnerBC inner, OuterBC outer,
                              WeightKind weight = WeightKind::SchwarzschildWeight);

// Closed-form Dirichlet modes of the flat radial operator on [R0, R]:
//   g_j(r) = c_j r^{-(n-3)/2} sin(j pi log(r/R0) / log(R/R0)),
//   beta_j = ((n-3)/2)^2 + (j pi / log(R/R0))^2,
//   c_j = sqrt(2 / log(R/R0)),
// normalized in L^2([R0,R], t^{n-4} dt).
struct IvpMode {
    int j = 0;
    double beta = 0.0;
    double c = 0.0;
    double R0 = 0.0, R = 0.0;
    int n = 0;

    double value(double r) const;
    double deriv(double r) const;
    double second_deriv(double r) const;
};

IvpMode ivp_mode(const SchwarzschildSpace& space, double R, int j);

// W_k(r) = V(r) - (4 lambda_k + (n-2)(n-4)) / (4 r^2).
double wk_potential(const SchwarzschildSpace& space, double lambda_k, double r);

// Zero-energy kernel of v'' + V v = 0:
//   v(r) = (2 r^{n-2} / (m + 2 r^{n-2}))^{1/(n-2)}, increasing to 1.
double closed_form_v(const SchwarzschildSpace& space, double r);
double closed_form_v_deriv(const SchwarzschildSpace& space, double r);
double closed_form_v_second_deriv(const SchwarzschildSpace& space, double r);

// Positive supersolution used by the stability criterion:
//   psi(r) = 2 r^{(n-2)/2} / (m + 2 r^{n-2}),  psi'(R0) = 0.
struct FcCandidate {
    double psi = 0.0;
    double dpsi_dr = 0.0;
};
FcCandidate fc_candidate(const SchwarzschildSpace& space, double r);

// Negative/nonpositive eigenvalue counts of one discretized mode problem.
// Eigenvalues are reported in units of 1/R0^2 with the problem's mass
// weight; the nonpositive count detects numerical zeros at 1e-8 relative
// tolerance in the log-volume normalization, where separated eigenvalues
// carry the mode-sum scale. `refined` records agreement of all counts
// with one uniform grid doubling; `skipped_analytic` marks modes decided
// without assembly.
struct ModeSpectrumResult {
    int negative_count = 0;
    int nonpositive_count = 0;
    std::vector<double> smallest_eigenvalues;
    int grid_size = 0;
    bool refined = false;
    bool skipped_analytic = false;
};

// Assembles the mode quadratic form with conforming P1 elements on the
// log grid and counts generalized eigenvalues by tridiagonal LDL^t
// inertia. Conformity makes every discrete eigenvalue an upper bound of
// its continuum counterpart, so a mode that is truly nonnegative can
// never acquire a spurious negative count.
ModeSpectrumResult count_negative(const ModeProblem& problem,
                                  const RadialGrid& grid);

// True when the mode form is pointwise positive, i.e.
// lambda_k + ((n-3)/2)^2 >= (n-1)/4, which forces zero counts at every R.
bool mode_pointwise_positive(int n, double lambda_k);

// Boundary eigenvalue of one mode: the homogeneous mode equation is shot
// from the horizon Robin data and the quotient
//   lambda = (dw/dnu) / (kappa(R) w)
// is read off at R in the curved picture (unit conormal). The mode
// contributes to the boundary-problem index exactly when lambda < 1.
// A vanishing trajectory at R is flagged degenerate instead of valued.
struct SteklovResult {
    bool degenerate = false;
    double value = 0.0;
    bool two_integrator_ok = false; // RK4 vs step-halved RK4 to 1e-8
};

SteklovResult steklov_value(const ModeProblem& problem);

} // namespace coneindex
