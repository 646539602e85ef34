#include "chiral/specfun.hpp"

#include <cmath>
#include <vector>

namespace chiral {

namespace {

constexpr cplx I{0.0, 1.0};

// Power series j_n(x) = x^n/(2n+1)!! sum_k (-x^2/2)^k / (k! (2n+3)...(2n+2k+1)).
cplx bessel_j_series(int n, cplx x)
{
    cplx pref = 1.0;
    for (int k = 1; k <= n; ++k)
        pref *= x / double(2 * k + 1);
    const cplx q = -0.5 * x * x;
    cplx term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (double(k) * double(2 * n + 2 * k + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return pref * sum;
}

// Miller's downward recurrence, normalised against the closed forms of j0, j1.
cplx bessel_j_miller(int n, cplx x)
{
    const double ax = std::abs(x);
    const int big = std::max(n, int(ax));
    const int start = big + 30 + int(std::sqrt(40.0 * (big + 1)));
    cplx jp1 = 0.0, j = 1e-30, jn = 0.0;
    for (int k = start; k >= 1; --k) {
        const cplx jm1 = double(2 * k + 1) / x * j - jp1;
        jp1 = j;
        j = jm1;
        if (k - 1 == n) jn = j;
        if (std::abs(j) > 1e250) {
            j *= 1e-250; jp1 *= 1e-250; jn *= 1e-250;
        }
    }
    const cplx j0r = j, j1r = jp1;
    const cplx s = std::sin(x), c = std::cos(x);
    const cplx j0 = s / x;
    const cplx j1 = (s / x - c) / x;
    if (std::abs(j0r) >= std::abs(j1r))
        return jn * (j0 / j0r);
    return jn * (j1 / j1r);
}

}  // namespace

cplx sph_bessel_j(int n, cplx x)
{
    if (n < 0)
        throw PhysicsError("sph_bessel_j: negative order");
    if (x == cplx(0.0))
        return n == 0 ? 1.0 : 0.0;
    if (std::abs(x) < 1.0 + 0.5 * n)
        return bessel_j_series(n, x);
    if (n == 0)
        return std::sin(x) / x;
    return bessel_j_miller(n, x);
}

cplx sph_bessel_y(int n, cplx x)
{
    if (n < 0)
        throw PhysicsError("sph_bessel_y: negative order");
    if (x == cplx(0.0))
        throw PhysicsError("sph_bessel_y: pole at x = 0");
    const cplx s = std::sin(x), c = std::cos(x);
    cplx ym = -c / x;
    if (n == 0) return ym;
    cplx y = -c / (x * x) - s / x;
    for (int k = 1; k < n; ++k) {
        const cplx yp = double(2 * k + 1) / x * y - ym;
        ym = y;
        y = yp;
    }
    return y;
}

cplx sph_hankel1(int n, cplx x)
{
    if (n < 0)
        throw PhysicsError("sph_hankel1: negative order");
    if (x == cplx(0.0))
        throw PhysicsError("sph_hankel1: pole at x = 0");
    const cplx e = std::exp(I * x);
    cplx hm = -I * e / x;
    if (n == 0) return hm;
    cplx h = -e * (x + I) / (x * x);
    for (int k = 1; k < n; ++k) {
        const cplx hp = double(2 * k + 1) / x * h - hm;
        hm = h;
        h = hp;
    }
    return h;
}

cplx sph_bessel_j_deriv(int n, cplx x)
{
    if (n == 0)
        return -sph_bessel_j(1, x);
    return (double(n) * sph_bessel_j(n - 1, x) - double(n + 1) * sph_bessel_j(n + 1, x))
           / double(2 * n + 1);
}

cplx sph_bessel_y_deriv(int n, cplx x)
{
    if (n == 0)
        return -sph_bessel_y(1, x);
    return sph_bessel_y(n - 1, x) - double(n + 1) / x * sph_bessel_y(n, x);
}

cplx sph_hankel1_deriv(int n, cplx x)
{
    if (n == 0)
        return -sph_hankel1(1, x);
    return sph_hankel1(n - 1, x) - double(n + 1) / x * sph_hankel1(n, x);
}

namespace {

// P_n^m(u) / s^shift with s = sqrt(1-u^2); shift is 0 or 1.
double legendre_scaled(int n, int m, double u, int shift)
{
    if (m < 0 || m > n)
        return 0.0;
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    double pmm = 1.0;
    for (int k = 1; k <= m; ++k)
        pmm *= double(2 * k - 1);
    pmm *= std::pow(s, m - shift);
    if (n == m)
        return pmm;
    double p1 = u * double(2 * m + 1) * pmm;
    if (n == m + 1)
        return p1;
    double p0 = pmm;
    for (int l = m + 2; l <= n; ++l) {
        const double p2 = (u * double(2 * l - 1) * p1 - double(l + m - 1) * p0) / double(l - m);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

}  // namespace

double assoc_legendre(int n, int m, double u)
{
    if (std::abs(u) > 1.0)
        throw PhysicsError("assoc_legendre: |u| > 1");
    if (m < 0 || m > n)
        throw PhysicsError("assoc_legendre: need 0 <= m <= n");
    return legendre_scaled(n, m, u, 0);
}

double assoc_legendre_dtheta(int n, int m, double theta)
{
    const double u = std::cos(theta);
    if (m == 0)
        return n == 0 ? 0.0 : -legendre_scaled(n, 1, u, 0);
    return 0.5 * (double(n + m) * double(n - m + 1) * legendre_scaled(n, m - 1, u, 0)
                  - legendre_scaled(n, m + 1, u, 0));
}

double assoc_legendre_over_sin(int n, int m, double theta)
{
    if (m == 0)
        return 0.0;
    return double(m) * legendre_scaled(n, m, std::cos(theta), 1);
}

namespace {

struct Radial {
    cplx z;       // z_n(x)
    cplx z_over;  // z_n(x)/x
    cplx zeta;    // (x z_n)'/x
};

Radial radial(int n, RadialKind kind, cplx x)
{
    if (kind == RadialKind::hankel1) {
        if (x == cplx(0.0))
            throw PhysicsError("vector wave function: Hankel pole at r = 0");
        const cplx z = sph_hankel1(n, x);
        return {z, z / x, z / x + sph_hankel1_deriv(n, x)};
    }
    if (x == cplx(0.0)) {
        const double lim = n == 1 ? 1.0 / 3.0 : 0.0;
        return {n == 0 ? 1.0 : 0.0, lim, 2.0 * lim};
    }
    const cplx z = sph_bessel_j(n, x);
    // j_n/x = (j_{n-1} + j_{n+1})/(2n+1) stays accurate at small x
    const cplx zo = n == 0 ? z / x
                           : (sph_bessel_j(n - 1, x) + sph_bessel_j(n + 1, x)) / double(2 * n + 1);
    return {z, zo, zo + sph_bessel_j_deriv(n, x)};
}

}  // namespace

Vec3 vector_wave_M(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k)
{
    const Radial R = radial(idx.n, idx.radial_kind, k * p.r);
    const double mp = assoc_legendre_over_sin(idx.n, idx.m, p.theta);
    const double dp = assoc_legendre_dtheta(idx.n, idx.m, p.theta);
    const double c = std::cos(idx.m * p.phi), s = std::sin(idx.m * p.phi);
    if (idx.parity == Parity::even)
        return {0.0, -mp * s * R.z, -dp * c * R.z};
    return {0.0, mp * c * R.z, -dp * s * R.z};
}

Vec3 vector_wave_N(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k)
{
    const Radial R = radial(idx.n, idx.radial_kind, k * p.r);
    const double pl = assoc_legendre(idx.n, idx.m, std::cos(p.theta));
    const double mp = assoc_legendre_over_sin(idx.n, idx.m, p.theta);
    const double dp = assoc_legendre_dtheta(idx.n, idx.m, p.theta);
    const double c = std::cos(idx.m * p.phi), s = std::sin(idx.m * p.phi);
    const double nn = double(idx.n * (idx.n + 1));
    if (idx.parity == Parity::even)
        return {nn * pl * c * R.z_over, dp * c * R.zeta, -mp * s * R.zeta};
    return {nn * pl * s * R.z_over, dp * s * R.zeta, mp * c * R.zeta};
}

Vec3 vector_wave_V(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k)
{
    const Vec3 M = vector_wave_M(idx, p, k), N = vector_wave_N(idx, p, k);
    const double w = 1.0 / std::sqrt(2.0);
    return {w * (M[0] + N[0]), w * (M[1] + N[1]), w * (M[2] + N[2])};
}

Vec3 vector_wave_W(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k)
{
    const Vec3 M = vector_wave_M(idx, p, k), N = vector_wave_N(idx, p, k);
    const double w = 1.0 / std::sqrt(2.0);
    return {w * (M[0] - N[0]), w * (M[1] - N[1]), w * (M[2] - N[2])};
}

Vec3 spherical_to_cartesian(const Vec3& v, double theta, double phi)
{
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    return {v[0] * st * cp + v[1] * ct * cp - v[2] * sp,
            v[0] * st * sp + v[1] * ct * sp + v[2] * cp,
            v[0] * ct - v[1] * st};
}

}  // namespace chiral
