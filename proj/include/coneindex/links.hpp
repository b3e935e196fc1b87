#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coneindex {

enum class LinkKind { Equator, Clifford, Raw };

// A closed minimal hypersurface Gamma in the unit sphere S^{n-1}, used as
// the link of a cone. Equators and Clifford tori carry exact spectral
// data; raw links are user-supplied triples trusted without verification.
struct MinimalLink {
    int ambient_n = 0;
    LinkKind kind = LinkKind::Equator;
    int p = 0, q = 0; // Clifford factors, p + q = n - 2
    double volume = 0.0;
    double shape_norm_sq = 0.0; // |A_Gamma|^2, constant on the catalog
    std::string label;
    // Raw links: explicit (eigenvalue, multiplicity) levels, ascending.
    std::vector<std::pair<double, int>> raw_levels;
};

// Volume of the unit k-sphere via the recursion
// omega_k = 2 pi omega_{k-2} / (k-1), omega_0 = 2, omega_1 = 2 pi.
double sphere_volume(int k);

// Totally geodesic link S^{n-2}.
MinimalLink equator(int n);

// Clifford link S^p(sqrt(p/(n-2))) x S^q(sqrt(q/(n-2))), q = n-2-p.
MinimalLink clifford(int n, int p);

// User-supplied link; levels must be ascending with positive
// multiplicities. Minimality and the spectral data are not verified.
MinimalLink raw_link(int ambient_n, double volume, double shape_norm_sq,
                     std::vector<std::pair<double, int>> levels,
                     std::string label = "raw");

// Lowest distinct levels of the Jacobi operator -Lap - |A|^2 on the link,
// with multiplicities.
struct JacobiSpectrum {
    std::vector<double> eigenvalues;
    std::vector<int> multiplicities;
    int count = 0;
    std::string source_label;
};

// The lowest `count` distinct levels. For catalog links the enumeration
// box grows until the smallest excluded lattice candidate exceeds the
// last kept level, so no eigenvalue can be missed. `initial_cutoff`
// seeds the box size (0 = automatic); results do not depend on it.
JacobiSpectrum jacobi_spectrum(const MinimalLink& link, int count,
                               int initial_cutoff = 0);

// First Jacobi eigenvalue of the link.
double link_lambda1(const MinimalLink& link);

// 4 lambda_1(Gamma) + (n-2)(n-4). A nonnegative margin certifies that the
// cone over Gamma is stable (it admits a positive supersolution of the
// Jacobi equation with Neumann horizon data).
double stability_margin(const MinimalLink& link);

// Multiplicity of the l-th Laplace level on the unit d-sphere.
int sphere_harmonic_multiplicity(int d, int l);

} // namespace coneindex
