#pragma once

#include "chiral/core.hpp"

namespace chiral {

struct SphericalPoint {
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

enum class Parity { even, odd };
enum class RadialKind { bessel, hankel1 };

struct WaveFunctionIndex {
    Parity parity = Parity::even;
    int m = 0;
    int n = 1;
    RadialKind radial_kind = RadialKind::bessel;
};

cplx sph_bessel_j(int n, cplx x);
cplx sph_bessel_y(int n, cplx x);
cplx sph_hankel1(int n, cplx x);

// d/dx of the above via z_n' = z_{n-1} - (n+1)/x z_n (series at x -> 0 for j).
cplx sph_bessel_j_deriv(int n, cplx x);
cplx sph_bessel_y_deriv(int n, cplx x);
cplx sph_hankel1_deriv(int n, cplx x);

// Ferrers P_n^m(u) without the Condon-Shortley phase, so P_1^1 = +sqrt(1-u^2).
double assoc_legendre(int n, int m, double u);
// dP_n^m(cos θ)/dθ, same phase convention.
double assoc_legendre_dtheta(int n, int m, double theta);
// m P_n^m(cos θ)/sin θ with the pole limits filled in.
double assoc_legendre_over_sin(int n, int m, double theta);

// Components (e_r, e_θ, e_φ) in the local spherical basis.
Vec3 vector_wave_M(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k);
Vec3 vector_wave_N(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k);
Vec3 vector_wave_V(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k);
Vec3 vector_wave_W(const WaveFunctionIndex& idx, const SphericalPoint& p, cplx k);

Vec3 spherical_to_cartesian(const Vec3& v, double theta, double phi);

}  // namespace chiral
