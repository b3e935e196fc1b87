#include <doctest.h>

#include "coneindex/links.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

using namespace coneindex;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent volume oracle: omega_k = 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double omega_gamma(int k) {
    return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

// Brute-force spectrum oracle with a fixed large cutoff, merging equal
// values; independent of the production enumeration logic.
std::vector<std::pair<double, int>> brute_force_spectrum(const MinimalLink& link,
                                                         int count) {
    std::map<long long, int> acc; // key: rounded 1e9 * value
    const auto push = [&](double v, int mult) {
        acc[llround(v * 1e9)] += mult;
    };
    if (link.kind == LinkKind::Equator) {
        const int d = link.ambient_n - 2;
        for (int l = 0; l <= 80; ++l)
            push(double(l) * (l + d - 1), sphere_harmonic_multiplicity(d, l));
    } else {
        const int n = link.ambient_n, p = link.p, q = link.q;
        for (int a = 0; a <= 80; ++a)
            for (int b = 0; b <= 80; ++b)
                push(a * double(a + p - 1) * (n - 2) / p +
                         b * double(b + q - 1) * (n - 2) / q - (n - 2),
                     sphere_harmonic_multiplicity(p, a) *
                         sphere_harmonic_multiplicity(q, b));
    }
    std::vector<std::pair<double, int>> out;
    for (const auto& [key, mult] : acc) out.push_back({key * 1e-9, mult});
    out.resize(count);
    return out;
}

} // namespace

TEST_SUITE_BEGIN("links");

TEST_CASE("unit sphere volumes against the Gamma-function oracle") {
    CHECK(sphere_volume(2) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(sphere_volume(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
    // frozen: 16 pi^3 / 15
    CHECK(sphere_volume(6) == doctest::Approx(33.073361792319808187).epsilon(1e-14));
    for (int k = 0; k <= 12; ++k)
        CHECK(sphere_volume(k) == doctest::Approx(omega_gamma(k)).epsilon(1e-12));
    CHECK_THROWS_AS(sphere_volume(-1), std::domain_error);
}

TEST_CASE("equator links") {
    const auto e4 = equator(4);
    CHECK(e4.volume == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(e4.shape_norm_sq == 0.0);
    const auto e3 = equator(3);
    CHECK(e3.volume == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    const auto e5 = equator(5);
    CHECK(e5.volume == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
    CHECK_THROWS_AS(equator(2), std::domain_error);
}

TEST_CASE("clifford links") {
    const auto c41 = clifford(4, 1);
    CHECK(c41.volume == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
    CHECK(c41.shape_norm_sq == doctest::Approx(2.0));
    CHECK(link_lambda1(c41) == doctest::Approx(-2.0));

    const auto c83 = clifford(8, 3);
    CHECK(c83.p == 3);
    CHECK(c83.q == 3);
    CHECK(c83.shape_norm_sq == doctest::Approx(6.0));
    const double radius = std::sqrt(3.0 / 6.0);
    CHECK(radius == doctest::Approx(std::sqrt(0.5)));
    CHECK(c83.volume ==
          doctest::Approx(std::pow(sphere_volume(3) * std::pow(radius, 3), 2))
              .epsilon(1e-13));

    CHECK_THROWS_AS(clifford(4, 0), std::domain_error);
    CHECK_THROWS_AS(clifford(4, 2), std::domain_error);
    CHECK_THROWS_AS(clifford(3, 1), std::domain_error);
}

TEST_CASE("jacobi spectrum of the round link") {
    const auto spec = jacobi_spectrum(equator(4), 3);
    REQUIRE(spec.eigenvalues.size() == 3);
    CHECK(spec.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(spec.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(spec.eigenvalues[2] == doctest::Approx(6.0));
    CHECK(spec.multiplicities[0] == 1);
    CHECK(spec.multiplicities[1] == 3);
    CHECK(spec.multiplicities[2] == 5);
}

TEST_CASE("jacobi spectrum of the Clifford link") {
    const auto spec = jacobi_spectrum(clifford(4, 1), 2);
    CHECK(spec.eigenvalues[0] == doctest::Approx(-2.0));
    CHECK(spec.multiplicities[0] == 1);
    CHECK(spec.eigenvalues[1] == doctest::Approx(0.0));
    CHECK(spec.multiplicities[1] == 4);
}

TEST_CASE("lowest level is the constant eigenfunction") {
    for (const auto& link :
         {equator(4), equator(7), clifford(4, 1), clifford(8, 3), clifford(9, 2)}) {
        const auto spec = jacobi_spectrum(link, 1);
        CHECK(spec.eigenvalues[0] ==
              doctest::Approx(-link.shape_norm_sq).epsilon(1e-14));
        CHECK(spec.multiplicities[0] == 1);
    }
}

TEST_CASE("spectra agree with the brute-force lattice oracle") {
    for (const auto& link :
         {equator(4), equator(6), clifford(4, 1), clifford(6, 1), clifford(8, 3),
          clifford(9, 2), clifford(12, 5)}) {
        const auto spec = jacobi_spectrum(link, 8);
        const auto oracle = brute_force_spectrum(link, 8);
        for (int i = 0; i < 8; ++i) {
            CHECK(spec.eigenvalues[i] ==
                  doctest::Approx(oracle[i].first).epsilon(1e-8));
            CHECK(spec.multiplicities[i] == oracle[i].second);
        }
    }
}

TEST_CASE("enumeration is stable under raising the cutoff") {
    for (const auto& link : {equator(5), clifford(7, 2), clifford(10, 4)}) {
        const auto a = jacobi_spectrum(link, 12, 24);
        const auto b = jacobi_spectrum(link, 12, 48);
        CHECK(a.eigenvalues == b.eigenvalues);
        CHECK(a.multiplicities == b.multiplicities);
    }
}

TEST_CASE("stability margins") {
    CHECK(stability_margin(equator(4)) == doctest::Approx(0.0));
    CHECK(stability_margin(clifford(8, 3)) == doctest::Approx(0.0));
    CHECK(stability_margin(clifford(4, 1)) == doctest::Approx(-8.0));
    for (int n = 4; n <= 12; ++n) {
        CHECK(stability_margin(equator(n)) ==
              doctest::Approx(double(n - 2) * (n - 4)).epsilon(1e-13));
        for (int p = 1; p <= n - 3; ++p)
            CHECK(stability_margin(clifford(n, p)) ==
                  doctest::Approx(double(n - 2) * (n - 8)).epsilon(1e-13));
    }
}

TEST_CASE("raw links carry user data verbatim") {
    const auto link = raw_link(5, 7.5, 3.0, {{-3.0, 1}, {0.0, 4}, {2.5, 2}}, "custom");
    CHECK(link_lambda1(link) == doctest::Approx(-3.0));
    const auto spec = jacobi_spectrum(link, 3);
    CHECK(spec.eigenvalues[2] == doctest::Approx(2.5));
    CHECK(spec.multiplicities[1] == 4);
    CHECK_THROWS_AS(jacobi_spectrum(link, 4), std::domain_error);
    CHECK_THROWS_AS(raw_link(5, -1.0, 0.0, {{0.0, 1}}), std::domain_error);
    CHECK_THROWS_AS(raw_link(5, 1.0, 0.0, {{0.0, 1}, {0.0, 1}}), std::domain_error);
    CHECK_THROWS_AS(raw_link(5, 1.0, 0.0, {}), std::domain_error);
}

TEST_SUITE_END();
