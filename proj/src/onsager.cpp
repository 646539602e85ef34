#include "chiral/onsager.hpp"

#include "chiral/bulk.hpp"

#include <cmath>

namespace chiral {

namespace {

constexpr cplx I{0.0, 1.0};

void check_poles(cplx mu, cplx n)
{
    if (std::abs((2.0 * mu + 1.0) * (mu + 2.0 * n * n)) == 0.0)
        throw PhysicsError("onsager: pole at (2μ+1)(μ+2n_r²) = 0");
}

void check_radius(const CavityConfig& cav)
{
    if (!(cav.radius_a > 0.0))
        throw PhysicsError("onsager: cavity radius must be positive");
    if (cav.host.k0() * cav.radius_a >= cav.max_k0a)
        throw PhysicsError("onsager: k0·a outside the small-radius regime");
}

}  // namespace

FFactors f_factors(const MediumResponse& med)
{
    const cplx mu = med.mu, n = med.n_r();
    check_poles(mu, n);
    const cplx n2 = n * n, n3 = n2 * n, n4 = n2 * n2, n5 = n4 * n;
    const cplx q = (2.0 * mu + 1.0), r = (mu + 2.0 * n2);
    const cplx den2 = q * q * r * r;
    FFactors f;
    f.f0 = 3.0 * mu * (4.0 * mu * n5 + 3.0 * n5 + 3.0 * mu * mu * n3 + 2.0 * mu * n3) / den2;
    f.f1 = 3.0 * mu / (10.0 * den2)
           * (mu * (3.0 * mu + 1.0) + 20.0 * (mu + 1.0) * n4
              + (20.0 * mu * mu + 23.0 * mu + 3.0) * n2);
    f.f3 = 3.0 * mu / (2.0 * q * r);
    return f;
}

CurlyF curly_f(const MediumResponse& med)
{
    const cplx e = med.eps, mu = med.mu, n = med.n_r();
    const cplx qe = 2.0 * e + 1.0, qm = 2.0 * mu + 1.0;
    return {(3.0 * e / qe) * (3.0 / qm),
            9.0 * std::sqrt(e / mu) * (4.0 * n * n - 1.0) / (qe * qe * qm * qm)};
}

F0Main f0_main_with(const MediumResponse& med, CurlyF F)
{
    const cplx k = med.kappa;
    if (std::abs(k) < 1e-12)
        return {F.f_eps_mu + F.f_kappa * med.n_r() / 3.0, true};
    const CircularWaveNumbers w = wave_numbers(med);
    const cplx kp3 = w.k_plus * w.k_plus * w.k_plus;
    const cplx km3 = w.k_minus * w.k_minus * w.k_minus;
    // k-^3 - k+^3 with k- - k+ = 2 κ k0 pulled out
    const cplx den = 2.0 * k * w.k0
                     * (w.k_minus * w.k_minus + w.k_minus * w.k_plus + w.k_plus * w.k_plus);
    const cplx num = (F.f_eps_mu + k * F.f_kappa) * km3 - (F.f_eps_mu - k * F.f_kappa) * kp3;
    return {num / den, false};
}

F0Main f0_main(const MediumResponse& med)
{
    return f0_main_with(med, curly_f(med));
}

cplx onsager_a0v(const MediumResponse& med, double a)
{
    const cplx mu = med.mu, n = med.n_r(), k = med.kappa;
    const double k0 = med.k0();
    check_poles(mu, n);
    const cplx n2 = n * n, n3 = n2 * n, n4 = n2 * n2, n5 = n4 * n, n6 = n4 * n2, n7 = n6 * n;
    const cplx q = 2.0 * mu + 1.0, r = mu + 2.0 * n2;
    const cplx q2r2 = q * q * r * r;
    const double a3 = a * a * a;

    const cplx t1 = 3.0 * I * (mu * (mu + 2.0) + (1.0 - 4.0 * mu) * n2) / (2.0 * a3 * k0 * q * r);
    const cplx t2 = k0 * k0
                    * (-2.0 * mu * mu * q * q + 36.0 * mu * n7
                       + 9.0 * mu * (4.0 * mu * mu + 8.0 * mu + 1.0) * n5 - 8.0 * q * q * n4
                       + 9.0 * mu * mu * mu * n3 - 8.0 * mu * (2.0 * mu * n + n) * (2.0 * mu * n + n))
                    / (2.0 * q2r2);
    const cplx t3 = -9.0 * I * k0
                    * (-mu * mu * (5.0 * mu * mu + 7.0 * mu + 2.0) + 20.0 * mu * n6
                       + (20.0 * mu * mu * mu + 32.0 * mu * mu - 11.0 * mu - 5.0) * n4
                       - mu * (11.0 * mu * mu + 24.0 * mu + 7.0) * n2)
                    / (10.0 * a * q2r2);
    const cplx tk = 18.0 * k0 * k0 * mu * ((4.0 * mu + 3.0) * n5 + mu * (3.0 * mu + 2.0) * n3) / q2r2
                    - 9.0 * I * mu / (a3 * k0 * q * r)
                    - 9.0 * I * k0 * mu
                          * (mu * (3.0 * mu + 1.0) + 20.0 * (mu + 1.0) * n4
                             + (20.0 * mu * mu + 23.0 * mu + 3.0) * n2)
                          / (5.0 * a * q2r2);
    return t1 + t2 + t3 + k * tk;
}

cplx onsager_a0w(const MediumResponse& med, double a)
{
    const cplx mu = med.mu, n = med.n_r();
    const double k0 = med.k0();
    check_poles(mu, n);
    const cplx n2 = n * n, n3 = n2 * n, n4 = n2 * n2;
    const cplx q = 2.0 * mu + 1.0, r = mu + 2.0 * n2;
    const cplx q2r2 = q * q * r * r;
    const cplx d = n2 - mu * mu;
    return 9.0 * I * d / (2.0 * a * a * a * k0 * q * r)
           - 9.0 * I * k0 * d * (-mu * (3.0 * mu + 1.0) + 20.0 * mu * n4 - (13.0 * mu + 3.0) * n2)
                 / (10.0 * a * q2r2)
           + 9.0 * k0 * k0 * mu * (4.0 * n2 - 1.0) * n3 * d / (2.0 * q2r2);
}

OnsagerCoefficients onsager_coefficients(const CavityConfig& cav)
{
    if (!(cav.radius_a > 0.0))
        throw PhysicsError("onsager_coefficients: cavity radius must be positive");
    MediumResponse flipped = cav.host;
    flipped.kappa = -flipped.kappa;
    OnsagerCoefficients c;
    c.a0v = onsager_a0v(cav.host, cav.radius_a);
    c.a0w = onsager_a0w(cav.host, cav.radius_a);
    c.b0v = onsager_a0w(flipped, cav.radius_a);
    c.b0w = onsager_a0v(flipped, cav.radius_a);
    return c;
}

CurlGreens curl_img_lfc(const CavityConfig& cav)
{
    check_radius(cav);
    const FFactors f = f_factors(cav.host);
    const double w = cav.host.omega, a = cav.radius_a;
    const cplx k = cav.host.kappa;
    const cplx val = k * kC * f.f3 / (kPi * a * a * a * w) + k * w * f.f1 / (kPi * a * kC)
                     + I * k * w * w * f.f0 / (kPi * kC * kC);
    return {identity(val.imag()), CurlKind::imaginary_part};
}

double gamma_ch_lfc(const CavityConfig& cav, const TransitionDipoles& mol, F0Source src,
                    std::optional<double> forced_f0)
{
    if (!cav.host.lossless())
        throw PhysicsError("gamma_ch_lfc: lossless host required (use the absorbing form)");
    double f0;
    if (forced_f0)
        f0 = *forced_f0;
    else if (src == F0Source::main)
        f0 = f0_main(cav.host).value.real();
    else
        f0 = f_factors(cav.host).f0.real();
    return f0 * gamma_ch_bulk(cav.host, mol);
}

double gamma_ch_lfc_absorbing_full(const CavityConfig& cav, const TransitionDipoles& mol)
{
    check_radius(cav);
    const cplx e = cav.host.eps, mu = cav.host.mu, k = cav.host.kappa;
    const double a = cav.radius_a;
    const double B = 2.0 * e.real() + 1.0, A = 2.0 * mu.real() + 1.0;
    const double bracket = 2.0 * k.real() * B * mu.imag() + 2.0 * k.real() * e.imag() * A
                           - k.imag() * B * A + 4.0 * k.imag() * e.imag() * mu.imag();
    const double den = a * a * a * kPi * kHbar * kEps0 * kC * std::norm(2.0 * e + 1.0)
                       * std::norm(2.0 * mu + 1.0);
    return 6.0 * rotatory_strength(mol) / den * bracket;
}

double gamma_ch_lfc_absorbing_mu1(const CavityConfig& cav, const TransitionDipoles& mol)
{
    check_radius(cav);
    const cplx e = cav.host.eps, k = cav.host.kappa;
    const double a = cav.radius_a;
    const double bracket = 2.0 * k.real() * e.imag() - k.imag() * (2.0 * e.real() + 1.0);
    const double den = a * a * a * kPi * kHbar * kEps0 * kC * std::norm(2.0 * e + 1.0);
    return 2.0 * rotatory_strength(mol) / den * bracket;
}

double gamma_ch_lfc_absorbing(const CavityConfig& cav, const TransitionDipoles& mol)
{
    if (cav.host.mu == cplx(1.0, 0.0))
        return gamma_ch_lfc_absorbing_mu1(cav, mol);
    return gamma_ch_lfc_absorbing_full(cav, mol);
}

double gamma_el_lfc(const CavityConfig& cav, const TransitionDipoles& mol, bool absorbing)
{
    const cplx e = cav.host.eps;
    if (!absorbing) {
        const double f = std::norm(3.0 * e / (2.0 * e + 1.0));
        return f * gamma_el_bulk(cav.host, mol);
    }
    if (!(cav.radius_a > 0.0))
        throw PhysicsError("gamma_el_lfc: cavity radius must be positive");
    const double a = cav.radius_a;
    return norm2(mol.d) / (kPi * kHbar * kEps0 * a * a * a) * 3.0 * e.imag()
           / std::norm(2.0 * e + 1.0);
}

double s_lfc(const CavityConfig& cav, const TransitionDipoles& mol, bool absorbing, F0Source src)
{
    const double d2 = norm2(mol.d);
    if (d2 == 0.0)
        throw PhysicsError("s_lfc: electric dipole is zero");
    const cplx e = cav.host.eps, k = cav.host.kappa;
    if (!absorbing) {
        const double f0 = src == F0Source::main ? f0_main(cav.host).value.real()
                                                : f_factors(cav.host).f0.real();
        const double g = std::norm(3.0 * e / (2.0 * e + 1.0));
        return f0 / g * s_bulk(cav.host, mol);
    }
    const double R = rotatory_strength(mol);
    if (k.imag() == 0.0)
        return 4.0 * k.real() * R / (3.0 * kC * d2);
    if (e.imag() == 0.0)
        throw PhysicsError("s_lfc: Im κ ≠ 0 needs Im ε ≠ 0");
    return 2.0 * R / (3.0 * kC * d2)
           * (2.0 * k.real() - k.imag() / e.imag() * (2.0 * e.real() + 1.0));
}

RateBreakdown rates_bulk_lfc(const CavityConfig& cav, const TransitionDipoles& mol, F0Source src)
{
    RateBreakdown r;
    r.gamma_vac = gamma_vacuum(mol);
    const bool absorbing = !cav.host.lossless();
    if (absorbing) {
        r.gamma_ch = gamma_ch_lfc_absorbing(cav, mol);
        r.gamma_el = gamma_el_lfc(cav, mol, true);
    } else {
        r.gamma_ch = gamma_ch_lfc(cav, mol, src);
        r.gamma_el = gamma_el_lfc(cav, mol, false);
    }
    r.gamma_total = r.gamma_el + r.gamma_ch;
    r.s_disc = norm2(mol.d) > 0.0 ? s_lfc(cav, mol, absorbing, src) : 0.0;
    r.method = Method::closed_form;
    r.assembly = Assembly::bulk_total;
    return r;
}

}  // namespace chiral
