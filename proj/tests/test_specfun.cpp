#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chiral/specfun.hpp"
#include "fd_curl.hpp"
#include "test_util.hpp"

using namespace chiral;
using testing_util::rel;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("spherical Bessel j")
{
    CHECK(sph_bessel_j(0, 0.0) == cplx(1.0));
    CHECK(sph_bessel_j(3, 0.0) == cplx(0.0));
    CHECK(rel(sph_bessel_j(1, 1e-4), cplx(1e-4 / 3.0 * (1.0 - 1e-8 / 10.0))) < 1e-10);
    // mpmath, 40 digits
    CHECK(rel(sph_bessel_j(2, 5.0), cplx(0.13473121008512521879)) < 1e-13);
    // downward recurrence stays accurate where upward would not
    CHECK(rel(sph_bessel_j(8, 0.05), cplx(std::pow(0.05, 8) / 34459425.0 * (1.0 - 0.0025 / 38.0 + 0.00125 * 0.00125 / 798.0))) < 1e-12);
}

TEST_CASE("spherical Hankel h1")
{
    CHECK(rel(sph_hankel1(0, 1.0), -I * std::exp(I) / 1.0) < 1e-14);
    const cplx x = 2.0;
    CHECK(rel(sph_hankel1(1, x), -std::exp(I * x) * (1.0 + I / x) / x) < 1e-14);
    CHECK(rel(sph_hankel1(2, cplx(3.0, 0.5)), cplx(0.15346867424323953713, -0.22754445518637077946)) < 1e-13);
}

TEST_CASE("Wronskian j y' - j' y = 1/x^2")
{
    for (double x = 0.1; x <= 50.0; x *= 1.37)
        for (int n = 0; n <= 4; ++n) {
            const cplx w = sph_bessel_j(n, x) * sph_bessel_y_deriv(n, x)
                           - sph_bessel_j_deriv(n, x) * sph_bessel_y(n, x);
            CHECK(rel(w, cplx(1.0 / (x * x))) < 1e-10);
        }
}

TEST_CASE("derivatives against central differences")
{
    const cplx x(1.3, 0.2);
    const double h = 1e-6;
    for (int n = 0; n <= 3; ++n) {
        const cplx dj = (sph_bessel_j(n, x + h) - sph_bessel_j(n, x - h)) / (2 * h);
        const cplx dh = (sph_hankel1(n, x + h) - sph_hankel1(n, x - h)) / (2 * h);
        CHECK(rel(sph_bessel_j_deriv(n, x), dj) < 1e-8);
        CHECK(rel(sph_hankel1_deriv(n, x), dh) < 1e-8);
    }
}

TEST_CASE("associated Legendre, no Condon-Shortley phase")
{
    for (double u : {-0.9, -0.2, 0.0, 0.4, 0.77}) {
        CHECK(assoc_legendre(1, 0, u) == doctest::Approx(u).epsilon(1e-15));
        CHECK(assoc_legendre(1, 1, u) == doctest::Approx(std::sqrt(1 - u * u)).epsilon(1e-15));
    }
    CHECK(rel(assoc_legendre(2, 1, 0.5), 1.2990381056766579701) < 1e-14);
    CHECK_THROWS_AS(assoc_legendre(2, 3, 0.5), PhysicsError);

    // d/dθ and m P/sinθ against their definitions
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= n; ++m) {
            const double th = 0.83, h = 1e-6;
            const double fd = (assoc_legendre(n, m, std::cos(th + h)) - assoc_legendre(n, m, std::cos(th - h))) / (2 * h);
            CHECK(std::abs(assoc_legendre_dtheta(n, m, th) - fd) < 1e-8);
            CHECK(std::abs(assoc_legendre_over_sin(n, m, th) - m * assoc_legendre(n, m, std::cos(th)) / std::sin(th)) < 1e-12);
        }
    // pole limit: m P_1^1/sinθ -> 1
    CHECK(assoc_legendre_over_sin(1, 1, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("vector waves: structure and values")
{
    SUBCASE("n=1, m=0 at θ=0: only the radial N part")
    {
        const WaveFunctionIndex idx{Parity::even, 0, 1, RadialKind::bessel};
        const double kr = 1e-3;
        const Vec3 v = vector_wave_V(idx, {1.0, 0.0, 0.0}, kr);
        const cplx want = 2.0 * sph_bessel_j(1, kr) / kr / std::sqrt(2.0);
        CHECK(rel(v[0], want) < 1e-12);
        CHECK(std::abs(v[1]) < 1e-14);
        CHECK(std::abs(v[2]) < 1e-14);
    }
    SUBCASE("V, even, m=1, n=2 at θ=π/2, φ=0 (mpmath)")
    {
        const WaveFunctionIndex idx{Parity::even, 1, 2, RadialKind::bessel};
        const Vec3 v = vector_wave_V(idx, {1.0, kPi / 2, 0.0}, 1.7);
        CHECK(std::abs(v[0]) < 1e-15);
        CHECK(rel(v[1], cplx(-0.49947560774129084896)) < 1e-12);
        CHECK(rel(v[2], cplx(0.33082323228552482735)) < 1e-12);
    }
    SUBCASE("W, even, m=0, n=1 at θ=0.7, φ=0.3 (mpmath)")
    {
        const WaveFunctionIndex idx{Parity::even, 0, 1, RadialKind::bessel};
        const Vec3 w = vector_wave_W(idx, {1.0, 0.7, 0.3}, 0.9);
        CHECK(rel(w[0], cplx(-0.33217779882500973415)) < 1e-12);
        CHECK(rel(w[1], cplx(0.25658241847454839823)) < 1e-12);
        CHECK(rel(w[2], cplx(0.1259052750891486289)) < 1e-12);
    }
    SUBCASE("V + W = sqrt2 M; real fields for real k")
    {
        const WaveFunctionIndex idx{Parity::odd, 2, 3, RadialKind::bessel};
        const SphericalPoint p{2.0, 1.1, -0.4};
        const Vec3 v = vector_wave_V(idx, p, 1.3), w = vector_wave_W(idx, p, 1.3), m = vector_wave_M(idx, p, 1.3);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(v[i] + w[i] - std::sqrt(2.0) * m[i]) < 1e-14);
            CHECK(v[i].imag() == 0.0);
            CHECK(w[i].imag() == 0.0);
        }
    }
}

TEST_CASE("curl eigen-relations for both radial kinds")
{
    testing_util::Draws rnd(7);
    const double k0 = 1e7;
    const cplx kp = k0 * 1.45, km = k0 * 1.55;
    for (RadialKind kind : {RadialKind::bessel, RadialKind::hankel1})
        for (int n = 1; n <= 3; ++n)
            for (int m = 0; m <= n; ++m)
                for (Parity par : {Parity::even, Parity::odd}) {
                    if (m == 0 && par == Parity::odd)
                        continue;  // identically zero
                    const WaveFunctionIndex idx{par, m, n, kind};
                    for (int s = 0; s < 3; ++s) {
                        const double r = rnd.uniform(0.5, 3.0) / k0;
                        const double th = rnd.uniform(0.3, 2.8), ph = rnd.uniform(-3.0, 3.0);
                        const double x = r * std::sin(th) * std::cos(ph), y = r * std::sin(th) * std::sin(ph), z = r * std::cos(th);
                        const Vec3 cv = testing_util::fd_curl(idx, true, kp, x, y, z, 1e-6 * r);
                        const Vec3 v = testing_util::wave_cartesian(idx, true, kp, x, y, z);
                        const Vec3 cw = testing_util::fd_curl(idx, false, km, x, y, z, 1e-6 * r);
                        const Vec3 w = testing_util::wave_cartesian(idx, false, km, x, y, z);
                        Vec3 dv, dw;
                        for (int i = 0; i < 3; ++i) {
                            dv[i] = cv[i] - kp * v[i];
                            dw[i] = cw[i] + km * w[i];
                        }
                        CHECK(testing_util::vec_norm(dv) <= 1e-6 * std::abs(kp) * testing_util::vec_norm(v));
                        CHECK(testing_util::vec_norm(dw) <= 1e-6 * std::abs(km) * testing_util::vec_norm(w));
                    }
                }
}
