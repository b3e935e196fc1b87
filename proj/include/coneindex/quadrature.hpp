#pragma once

#include <functional>
#include <span>

namespace coneindex {

// Adaptive Simpson integration on [a, b].
//
// Recursion stops when the local Richardson estimate is below the
// tolerance share of the interval; the hard cap on function
// evaluations guards against non-smooth integrands. Throws
// NumericError on cap overflow.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b,
                        double abs_tol = 1e-10,
                        long max_evals = (1L << 20));

// Composite Gauss-Legendre rule with `points` nodes per panel
// (supported: 4, 8, 20), `panels` equal subdivisions of [a, b].
double gauss_legendre(const std::function<double(double)>& f,
                      double a, double b, int points, int panels = 1);

// Nodes/weights of the `points`-node rule on [-1, 1].
std::span<const double> gauss_nodes(int points);
std::span<const double> gauss_weights(int points);

} // namespace coneindex
