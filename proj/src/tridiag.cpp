#include "coneindex/tridiag.hpp"
#include "coneindex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace coneindex {

int inertia_below(const SymTridiag& A, const SymTridiag& B, double shift,
                  bool strict) {
    const size_t n = A.size();
    if (B.size() != n || A.off.size() + 1 != n || B.off.size() + 1 != n)
        throw NumericError("inertia_below", "dimension mismatch");
    int negatives = 0;
    double prev_pivot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double d = A.diag[i] - shift * B.diag[i];
        double row_scale = std::abs(d);
        if (i > 0) {
            const double e = A.off[i - 1] - shift * B.off[i - 1];
            d -= e * e / prev_pivot;
            row_scale = std::max(row_scale, std::abs(e));
        }
        if (i + 1 < n)
            row_scale = std::max(row_scale, std::abs(A.off[i] - shift * B.off[i]));
        const double floor = 1e-14 * std::max(row_scale, 1e-300);
        if (std::abs(d) < floor) {
            if (strict)
                throw NumericError("inertia_below",
                                   "pivot breakdown at index " + std::to_string(i));
            d = (d < 0.0 ? -floor : floor);
        }
        if (d < 0.0) ++negatives;
        prev_pivot = d;
    }
    return negatives;
}

std::vector<double> smallest_eigenvalues(const SymTridiag& A,
                                         const SymTridiag& B,
                                         int k, double rel_tol) {
    const int n = static_cast<int>(A.size());
    k = std::min(k, n);
    if (k <= 0) return {};

    const auto count = [&](double t) { return inertia_below(A, B, t, false); };

    // Expand brackets until [lo, hi] contains none below lo and >= k below hi.
    double lo = -1.0, hi = 1.0;
    for (int it = 0; count(lo) > 0; ++it) {
        lo *= 4.0;
        if (it > 300) throw NumericError("smallest_eigenvalues", "lower bracket diverged");
    }
    for (int it = 0; count(hi) < k; ++it) {
        hi *= 4.0;
        if (it > 300) throw NumericError("smallest_eigenvalues", "upper bracket diverged");
    }

    std::vector<double> out(k);
    for (int j = 1; j <= k; ++j) {
        double a = lo, b = hi;
        // smallest t with count(t) >= j
        while (b - a > rel_tol * std::max(1.0, std::max(std::abs(a), std::abs(b)))) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (count(mid) >= j)
                b = mid;
            else
                a = mid;
        }
        out[j - 1] = 0.5 * (a + b);
    }
    return out;
}

} // namespace coneindex
