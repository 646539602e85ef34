#include "chiral/bulk.hpp"

#include <cmath>

namespace chiral {

namespace {

constexpr cplx I{0.0, 1.0};

void require_lossless(const MediumResponse& med, const char* who)
{
    if (!med.lossless())
        throw PhysicsError(std::string(who) + ": derivation assumes a non-absorbing medium");
}

}  // namespace

CircularWaveNumbers wave_numbers(const MediumResponse& med)
{
    const double k0 = med.k0();
    const cplx n = med.n_r();
    return {k0 * (n - med.kappa), k0 * (n + med.kappa), k0, n};
}

CurlGreens curl_g0_finite(const MediumResponse& med, double rho)
{
    if (!(rho > 0.0))
        throw PhysicsError("curl_g0_finite: pole at rho = 0");
    const CircularWaveNumbers w = wave_numbers(med);
    const cplx ksum = w.k_plus + w.k_minus;
    CurlGreens out;
    out.kind = CurlKind::full;
    const cplx kp[2] = {w.k_plus, w.k_minus};
    const double sigma[2] = {1.0, -1.0};
    for (int p = 0; p < 2; ++p) {
        const cplx x = kp[p] * rho;
        const cplx pref = med.mu * std::exp(I * x) * (1.0 - I * x)
                          / (2.0 * kPi * rho * rho * rho * ksum);
        for (int i = 0; i < 3; ++i)
            out.matrix[i][i] += pref * sigma[p];
        // e_θ⊗e_φ - e_φ⊗e_θ at θ = 0, φ = 0 is the x-y block
        out.matrix[0][1] += pref * 0.5 * x;
        out.matrix[1][0] -= pref * 0.5 * x;
    }
    return out;
}

CurlGreens curl_img_g0_coincident(const MediumResponse& med)
{
    require_lossless(med, "curl_img_g0_coincident");
    const CircularWaveNumbers w = wave_numbers(med);
    const double kp = w.k_plus.real(), km = w.k_minus.real();
    // k+^3 - k-^3 factored so small κ does not cancel: k+ - k- = -2 κ k0
    const double diff = -2.0 * med.kappa.real() * w.k0;
    const double alpha = med.mu.real() * diff * (kp * kp + kp * km + km * km)
                         / (6.0 * kPi * (kp + km));
    return {identity(alpha), CurlKind::imaginary_part};
}

double gamma_ch_bulk(const MediumResponse& med, const TransitionDipoles& mol)
{
    require_lossless(med, "gamma_ch_bulk");
    const double n = med.n_r().real(), k = med.kappa.real();
    return gamma_ch_bulk_leading(med, mol) * (1.0 + k * k / (3.0 * n * n));
}

double gamma_ch_bulk_leading(const MediumResponse& med, const TransitionDipoles& mol)
{
    require_lossless(med, "gamma_ch_bulk_leading");
    const double w = mol.omega_ik;
    const double c4 = kC * kC * kC * kC;
    return -2.0 * med.mu.real() * med.n_r().real() * w * w * w * med.kappa.real()
           * rotatory_strength(mol) / (kHbar * kEps0 * kPi * c4);
}

double gamma_el_bulk(const MediumResponse& med, const TransitionDipoles& mol)
{
    require_lossless(med, "gamma_el_bulk");
    return med.mu.real() * med.n_r().real() * gamma_vacuum(mol);
}

double s_bulk(const MediumResponse& med, const TransitionDipoles& mol)
{
    require_lossless(med, "s_bulk");
    const double d2 = norm2(mol.d);
    if (d2 == 0.0)
        throw PhysicsError("s_bulk: electric dipole is zero");
    return -6.0 * med.kappa.real() * rotatory_strength(mol) / (kC * d2);
}

RateBreakdown rates_bulk(const MediumResponse& med, const TransitionDipoles& mol)
{
    RateBreakdown r;
    r.gamma_el = gamma_el_bulk(med, mol);
    r.gamma_ch = gamma_ch_bulk(med, mol);
    r.gamma_vac = gamma_vacuum(mol);
    r.gamma_total = r.gamma_el + r.gamma_ch;
    r.s_disc = norm2(mol.d) > 0.0 ? s_bulk(med, mol) : 0.0;
    r.method = Method::closed_form;
    r.assembly = Assembly::bulk_total;
    return r;
}

}  // namespace chiral
