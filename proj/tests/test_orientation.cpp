#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chiral/orientation.hpp"
#include "test_util.hpp"

using namespace chiral;

namespace {

TransitionDipoles helical()
{
    TransitionDipoles mol;
    mol.omega_ik = 1e15;
    mol.d = {cplx(1e-30), cplx(0.2e-30), cplx(0)};
    mol.m = {cplx(0, 1e-23), cplx(0, 0.1e-23), cplx(0.3e-23)};
    return mol;
}

}  // namespace

TEST_CASE("random rotations are proper orthogonal")
{
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto R = random_rotation(42, i);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k)
                    s += R[a][k] * R[b][k];
                CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-14);
            }
        const double det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1])
                           - R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0])
                           + R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
        CHECK(std::abs(det - 1.0) < 1e-14);
    }
}

TEST_CASE("orientation averages reproduce 2/3 and 4/3")
{
    const auto mol = helical();
    const double R = rotatory_strength(mol);
    const auto avg = average_orientations(mol, 100000, 12345);
    CHECK(std::abs(avg.parallel / (2.0 / 3.0 * R) - 1.0) < 0.01);
    CHECK(std::abs(avg.full_plus_z / (4.0 / 3.0 * R) - 1.0) < 0.01);
    CHECK(std::abs(avg.cross_z) < 0.01 * std::abs(R) * 10.0);
    CHECK(avg.samples == 100000);
}

TEST_CASE("averaging is schedule independent")
{
    const auto mol = helical();
    const auto s = average_orientations(mol, 30000, 7, ExecPolicy::serial);
    const auto p = average_orientations(mol, 30000, 7, ExecPolicy::parallel);
    CHECK(s.parallel == p.parallel);
    CHECK(s.full_plus_z == p.full_plus_z);
    CHECK(s.cross_z == p.cross_z);
    CHECK_THROWS_AS(average_orientations(mol, 0, 7), PhysicsError);
}
