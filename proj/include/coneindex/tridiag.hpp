#pragma once

#include <cstddef>
#include <vector>

namespace coneindex {

// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
// rows i and i+1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    size_t size() const { return diag.size(); }
};

// Inertia of A - shift * B via the LDL^t pivot sequence. B must be such
// that A - shift * B stays tridiagonal (same sparsity). Returns the number
// of negative pivots, i.e. the number of generalized eigenvalues of
// (A, B) strictly below `shift`.
//
// A pivot whose magnitude falls below 1e-14 of its row scale means the
// shifted matrix is numerically singular there. With strict=true this
// throws NumericError naming the pivot index; with strict=false the pivot
// is replaced by a signed tiny value so bisection sweeps can pass through
// eigenvalues.
int inertia_below(const SymTridiag& A, const SymTridiag& B, double shift,
                  bool strict = true);

// The k smallest generalized eigenvalues of (A, B), B positive definite,
// by bisection on the inertia count. rel_tol is relative to the bracket
// width at each step.
std::vector<double> smallest_eigenvalues(const SymTridiag& A,
                                         const SymTridiag& B,
                                         int k, double rel_tol = 1e-13);

} // namespace coneindex
