#include "chiral/orientation.hpp"

#include <cmath>
#include <vector>

namespace chiral {

namespace {

constexpr std::size_t kBlock = 1024;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit(std::uint64_t bits)
{
    return double(bits >> 11) * 0x1.0p-53;
}

Vec3 rotate(const std::array<std::array<double, 3>, 3>& R, const Vec3& v)
{
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = R[i][0] * v[0] + R[i][1] * v[1] + R[i][2] * v[2];
    return out;
}

struct Sums {
    double par = 0.0, full = 0.0, cross = 0.0;
};

Sums block_sum(const TransitionDipoles& mol, std::uint64_t seed, std::size_t lo, std::size_t hi)
{
    Sums s;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto R = random_rotation(seed, i);
        const Vec3 d = rotate(R, mol.d), m = rotate(R, mol.m);
        const double par = (d[0] * std::conj(m[0]) + d[1] * std::conj(m[1])).imag();
        const double z = (d[2] * std::conj(m[2])).imag();
        s.par += par;
        s.full += par + 2.0 * z;
        s.cross += (d[0] * std::conj(m[1]) - d[1] * std::conj(m[0])).imag();
    }
    return s;
}

}  // namespace

std::array<std::array<double, 3>, 3> random_rotation(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t base = splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL);
    const double u1 = unit(splitmix64(base)), u2 = unit(splitmix64(base + 1)),
                 u3 = unit(splitmix64(base + 2));
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double x = a * std::sin(2.0 * kPi * u2), y = a * std::cos(2.0 * kPi * u2);
    const double z = b * std::sin(2.0 * kPi * u3), w = b * std::cos(2.0 * kPi * u3);
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
             {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
             {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

OrientationAverage average_orientations(const TransitionDipoles& mol, std::size_t samples,
                                        std::uint64_t seed, ExecPolicy policy)
{
    if (samples == 0)
        throw PhysicsError("average_orientations: need at least one sample");
    const std::size_t nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<Sums> blocks(nblocks);
    const long nb = long(nblocks);
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < nb; ++b)
            blocks[std::size_t(b)] = block_sum(mol, seed, std::size_t(b) * kBlock,
                                               std::min(samples, std::size_t(b + 1) * kBlock));
    } else {
        for (long b = 0; b < nb; ++b)
            blocks[std::size_t(b)] = block_sum(mol, seed, std::size_t(b) * kBlock,
                                               std::min(samples, std::size_t(b + 1) * kBlock));
    }
    Sums t;
    for (const Sums& s : blocks) {
        t.par += s.par;
        t.full += s.full;
        t.cross += s.cross;
    }
    const double n = double(samples);
    return {t.par / n, t.full / n, t.cross / n, samples};
}

}  // namespace chiral
