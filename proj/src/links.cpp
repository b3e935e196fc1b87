#include "coneindex/links.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace coneindex {

namespace {

constexpr double kPi = std::numbers::pi;

// Merge tolerance for coinciding lattice levels. The sums are exact
// rationals scaled by (n-2), so collisions are genuine.
constexpr double kLevelTol = 1e-9;

bool same_level(double a, double b) {
    return std::abs(a - b) <= kLevelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long long r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Ascending-sorted (value, multiplicity) accumulation with merging.
struct LevelSet {
    std::vector<std::pair<double, int>> levels;

    void add(double v, int mult) {
        auto it = std::lower_bound(
            levels.begin(), levels.end(), v,
            [](const auto& a, double b) { return a.first < b && !same_level(a.first, b); });
        if (it != levels.end() && same_level(it->first, v))
            it->second += mult;
        else
            levels.insert(it, {v, mult});
    }
};

} // namespace

int sphere_harmonic_multiplicity(int d, int l) {
    if (l == 0) return 1;
    return static_cast<int>(binomial(l + d, d) - binomial(l + d - 2, d));
}

double sphere_volume(int k) {
    if (k < 0) throw std::domain_error("sphere_volume: negative dimension");
    if (k == 0) return 2.0;
    if (k == 1) return 2.0 * kPi;
    return 2.0 * kPi * sphere_volume(k - 2) / (k - 1);
}

MinimalLink equator(int n) {
    if (n < 3) throw std::domain_error("equator: dimension must be at least 3");
    MinimalLink link;
    link.ambient_n = n;
    link.kind = LinkKind::Equator;
    link.volume = sphere_volume(n - 2);
    link.shape_norm_sq = 0.0;
    link.label = "equator";
    return link;
}

MinimalLink clifford(int n, int p) {
    if (n < 4) throw std::domain_error("clifford: dimension must be at least 4");
    if (p < 1 || p > n - 3)
        throw std::domain_error("clifford: factor dimension out of range");
    const int q = n - 2 - p;
    const double l1 = std::sqrt(double(p) / (n - 2));
    const double l2 = std::sqrt(double(q) / (n - 2));
    MinimalLink link;
    link.ambient_n = n;
    link.kind = LinkKind::Clifford;
    link.p = p;
    link.q = q;
    link.volume = sphere_volume(p) * std::pow(l1, p) * sphere_volume(q) * std::pow(l2, q);
    link.shape_norm_sq = double(n - 2);
    link.label = "clifford:" + std::to_string(p);
    return link;
}

MinimalLink raw_link(int ambient_n, double volume, double shape_norm_sq,
                     std::vector<std::pair<double, int>> levels,
                     std::string label) {
    if (ambient_n < 3) throw std::domain_error("raw_link: dimension must be at least 3");
    if (!(volume > 0.0)) throw std::domain_error("raw_link: volume must be positive");
    if (shape_norm_sq < 0.0) throw std::domain_error("raw_link: |A|^2 must be nonnegative");
    if (levels.empty()) throw std::domain_error("raw_link: at least one level required");
    for (size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].second <= 0)
            throw std::domain_error("raw_link: multiplicities must be positive");
        if (i > 0 && levels[i].first <= levels[i - 1].first)
            throw std::domain_error("raw_link: levels must be strictly ascending");
    }
    MinimalLink link;
    link.ambient_n = ambient_n;
    link.kind = LinkKind::Raw;
    link.volume = volume;
    link.shape_norm_sq = shape_norm_sq;
    link.label = std::move(label);
    link.raw_levels = std::move(levels);
    return link;
}

JacobiSpectrum jacobi_spectrum(const MinimalLink& link, int count,
                               int initial_cutoff) {
    if (count < 1) throw std::domain_error("jacobi_spectrum: count must be positive");

    JacobiSpectrum spec;
    spec.source_label = link.label;
    spec.count = count;

    if (link.kind == LinkKind::Raw) {
        if (count > static_cast<int>(link.raw_levels.size()))
            throw std::domain_error("jacobi_spectrum: raw link has too few levels");
        for (int i = 0; i < count; ++i) {
            spec.eigenvalues.push_back(link.raw_levels[i].first);
            spec.multiplicities.push_back(link.raw_levels[i].second);
        }
        return spec;
    }

    const int n = link.ambient_n;
    LevelSet set;

    if (link.kind == LinkKind::Equator) {
        // Laplace spectrum of S^{n-2}: l(l + n - 3).
        const int d = n - 2;
        int L = std::max(count + 2, initial_cutoff);
        for (;;) {
            set.levels.clear();
            for (int l = 0; l <= L; ++l)
                set.add(double(l) * (l + n - 3), sphere_harmonic_multiplicity(d, l));
            const double excluded = double(L + 1) * (L + 1 + n - 3);
            if (static_cast<int>(set.levels.size()) >= count &&
                excluded > set.levels[count - 1].first)
                break;
            L *= 2;
        }
    } else {
        // Product lattice: a(a+p-1)/l1^2 + b(b+q-1)/l2^2 - (n-2),
        // increasing in each index, so a box whose smallest excluded
        // corner exceeds the last kept level is exhaustive.
        const int p = link.p, q = link.q;
        const double il1 = double(n - 2) / p; // 1/lambda_1^2
        const double il2 = double(n - 2) / q;
        const auto value = [&](int a, int b) {
            return a * double(a + p - 1) * il1 + b * double(b + q - 1) * il2 -
                   double(n - 2);
        };
        int A = std::max(count + 2, initial_cutoff);
        int B = A;
        for (;;) {
            set.levels.clear();
            for (int a = 0; a <= A; ++a)
                for (int b = 0; b <= B; ++b)
                    set.add(value(a, b), sphere_harmonic_multiplicity(p, a) *
                                             sphere_harmonic_multiplicity(q, b));
            const double excluded = std::min(value(A + 1, 0), value(0, B + 1));
            if (static_cast<int>(set.levels.size()) >= count &&
                excluded > set.levels[count - 1].first)
                break;
            A *= 2;
            B *= 2;
        }
    }

    for (int i = 0; i < count; ++i) {
        spec.eigenvalues.push_back(set.levels[i].first);
        spec.multiplicities.push_back(set.levels[i].second);
    }
    return spec;
}

double link_lambda1(const MinimalLink& link) {
    if (link.kind == LinkKind::Raw) return link.raw_levels.front().first;
    return -link.shape_norm_sq;
}

double stability_margin(const MinimalLink& link) {
    const int n = link.ambient_n;
    return 4.0 * link_lambda1(link) + double(n - 2) * (n - 4);
}

} // namespace coneindex
