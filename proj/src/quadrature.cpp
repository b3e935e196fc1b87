#include "coneindex/quadrature.hpp"
#include "coneindex/errors.hpp"

#include <array>
#include <cmath>

namespace coneindex {

namespace {

constexpr std::array<double, 4> kNodes4 = {
    -0.861136311594052575, -0.339981043584856265,
    0.339981043584856265, 0.861136311594052575};
constexpr std::array<double, 4> kWeights4 = {
    0.347854845137453857, 0.652145154862546143,
    0.652145154862546143, 0.347854845137453857};

constexpr std::array<double, 8> kNodes8 = {
    -0.960289856497536232, -0.79666647741362674,
    -0.525532409916328986, -0.183434642495649805,
    0.183434642495649805, 0.525532409916328986,
    0.79666647741362674, 0.960289856497536232};
constexpr std::array<double, 8> kWeights8 = {
    0.101228536290376259, 0.222381034453374471,
    0.313706645877887287, 0.362683783378361983,
    0.362683783378361983, 0.313706645877887287,
    0.222381034453374471, 0.101228536290376259};

constexpr std::array<double, 20> kNodes20 = {
    -0.993128599185094925, -0.963971927277913791, -0.912234428251325906,
    -0.839116971822218823, -0.746331906460150793, -0.636053680726515025,
    -0.510867001950827098, -0.373706088715419561, -0.227785851141645078,
    -0.0765265211334973338, 0.0765265211334973338, 0.227785851141645078,
    0.373706088715419561, 0.510867001950827098, 0.636053680726515025,
    0.746331906460150793, 0.839116971822218823, 0.912234428251325906,
    0.963971927277913791, 0.993128599185094925};
constexpr std::array<double, 20> kWeights20 = {
    0.0176140071391521183, 0.0406014298003869413, 0.0626720483341090636,
    0.0832767415767047487, 0.101930119817240435, 0.118194531961518417,
    0.131688638449176627, 0.142096109318382051, 0.149172986472603747,
    0.152753387130725851, 0.152753387130725851, 0.149172986472603747,
    0.142096109318382051, 0.131688638449176627, 0.118194531961518417,
    0.101930119817240435, 0.0832767415767047487, 0.0626720483341090636,
    0.0406014298003869413, 0.0176140071391521183};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f,
                     double a, double b, double fa, double fm, double fb,
                     double whole, double tol, long& budget, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    budget -= 2;
    if (budget < 0)
        throw NumericError("adaptive_simpson", "evaluation cap exceeded");
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth > 0 && std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth > 60)
        throw NumericError("adaptive_simpson", "recursion depth exceeded");
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, budget, depth + 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, budget, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double abs_tol, long max_evals) {
    if (a == b) return 0.0;
    long budget = max_evals;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    budget -= 3;
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_step(f, a, b, fa, fm, fb, whole, abs_tol, budget, 0);
}

std::span<const double> gauss_nodes(int points) {
    switch (points) {
    case 4: return kNodes4;
    case 8: return kNodes8;
    case 20: return kNodes20;
    default: throw NumericError("gauss_legendre", "unsupported rule size");
    }
}

std::span<const double> gauss_weights(int points) {
    switch (points) {
    case 4: return kWeights4;
    case 8: return kWeights8;
    case 20: return kWeights20;
    default: throw NumericError("gauss_legendre", "unsupported rule size");
    }
}

double gauss_legendre(const std::function<double(double)>& f,
                      double a, double b, int points, int panels) {
    const auto xs = gauss_nodes(points);
    const auto ws = gauss_weights(points);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double acc = 0.0;
        for (size_t i = 0; i < xs.size(); ++i)
            acc += ws[i] * f(mid + 0.5 * h * xs[i]);
        total += 0.5 * h * acc;
    }
    return total;
}

} // namespace coneindex
