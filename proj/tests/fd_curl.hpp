#pragma once

#include "chiral/specfun.hpp"

#include <cmath>

namespace testing_util {

using chiral::cplx;
using chiral::Vec3;

// Cartesian field of the V (or W) wave at a Cartesian point.
inline Vec3 wave_cartesian(const chiral::WaveFunctionIndex& idx, bool is_v, cplx k, double x,
                           double y, double z)
{
    const double r = std::sqrt(x * x + y * y + z * z);
    const chiral::SphericalPoint p{r, std::acos(z / r), std::atan2(y, x)};
    const Vec3 s = is_v ? chiral::vector_wave_V(idx, p, k) : chiral::vector_wave_W(idx, p, k);
    return chiral::spherical_to_cartesian(s, p.theta, p.phi);
}

// Central-difference curl with step h.
inline Vec3 fd_curl(const chiral::WaveFunctionIndex& idx, bool is_v, cplx k, double x, double y,
                    double z, double h)
{
    auto d = [&](int axis, int comp) {
        double a[3] = {x, y, z}, b[3] = {x, y, z};
        a[axis] += h;
        b[axis] -= h;
        const Vec3 fa = wave_cartesian(idx, is_v, k, a[0], a[1], a[2]);
        const Vec3 fb = wave_cartesian(idx, is_v, k, b[0], b[1], b[2]);
        return (fa[comp] - fb[comp]) / (2.0 * h);
    };
    return {d(1, 2) - d(2, 1), d(2, 0) - d(0, 2), d(0, 1) - d(1, 0)};
}

inline double vec_norm(const Vec3& v)
{
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

}  // namespace testing_util
