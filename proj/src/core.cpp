#include "chiral/core.hpp"

#include <cmath>

namespace chiral {

const char* to_string(Method m)
{
    return m == Method::closed_form ? "closed_form" : "quadrature";
}

const char* to_string(Assembly a)
{
    return a == Assembly::bulk_total ? "bulk_total" : "vacuum_plus_scattering";
}

double norm2(const Vec3& v)
{
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

cplx dot(const Vec3& a, const Vec3& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 conj(const Vec3& v)
{
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

Mat3 identity(cplx alpha)
{
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        t[i][i] = alpha;
    return t;
}

double rotatory_strength(const TransitionDipoles& mol)
{
    return dot(mol.d, conj(mol.m)).imag();
}

namespace {

// Im entries for a full curl; the imaginary_part kind is stored already real.
cplx entry(const CurlGreens& c, int i, int j)
{
    return c.kind == CurlKind::full ? cplx(c.matrix[i][j].imag()) : c.matrix[i][j];
}

// Σ a_i T_ij b_j*, or its orientation average (1/3) Tr T (a · b*) for isotropic molecules.
template <class Get>
cplx contract(const Vec3& a, const Vec3& b, bool isotropic, Get T)
{
    const Vec3 bc = conj(b);
    cplx acc = 0.0;
    if (isotropic) {
        const cplx tr = T(0, 0) + T(1, 1) + T(2, 2);
        return tr * dot(a, bc) / 3.0;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            acc += a[i] * T(i, j) * bc[j];
    return acc;
}

}  // namespace

// Straight contraction Im[m . T . d*] carries the opposite sign of the bulk
// closed form once T = ∇×Im G0 is inserted; the global minus locks it.
double gamma_ch_from_curl(const CurlGreens& curl, const TransitionDipoles& mol)
{
    const cplx acc = contract(mol.m, mol.d, mol.isotropic,
                              [&](int i, int j) { return entry(curl, i, j); });
    return -4.0 * kMu0 * mol.omega_ik / kHbar * acc.imag();
}

double gamma_el_from_img(const Mat3& img, const TransitionDipoles& mol)
{
    const cplx acc = contract(mol.d, mol.d, mol.isotropic,
                              [&](int i, int j) { return img[i][j]; });
    const double w = mol.omega_ik;
    return 2.0 * kMu0 * w * w / kHbar * acc.real();
}

double gamma_vacuum(const TransitionDipoles& mol)
{
    const double w = mol.omega_ik;
    return w * w * w * norm2(mol.d) / (3.0 * kPi * kEps0 * kHbar * kC * kC * kC);
}

double degree_of_discrimination(double gamma_disc, double gamma_nd)
{
    if (gamma_nd == 0.0)
        throw PhysicsError("degree_of_discrimination: non-discriminating rate is zero");
    return gamma_disc / gamma_nd;
}

}  // namespace chiral
