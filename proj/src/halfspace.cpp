#include "chiral/halfspace.hpp"

#include "chiral/bulk.hpp"

#include <cmath>
#include <limits>

namespace chiral {

namespace {

constexpr cplx I{0.0, 1.0};

void require_height(const PlanarGeometry& g)
{
    if (!(g.z_m > 0.0))
        throw PhysicsError("planar geometry: z_m must be positive");
}

double mirror_sign(Handedness h)
{
    return h == Handedness::right ? 1.0 : -1.0;
}

// Im(d∥ . m∥*)
double rot_parallel(const TransitionDipoles& mol)
{
    if (mol.isotropic)
        return 2.0 / 3.0 * rotatory_strength(mol);
    return (mol.d[0] * std::conj(mol.m[0]) + mol.d[1] * std::conj(mol.m[1])).imag();
}

// Im(d . m* + d_z m_z*)
double rot_full_plus_z(const TransitionDipoles& mol)
{
    if (mol.isotropic)
        return 4.0 / 3.0 * rotatory_strength(mol);
    return rotatory_strength(mol) + (mol.d[2] * std::conj(mol.m[2])).imag();
}

// Im[(d × m*) . e_z], zero on orientation average
double rot_cross_z(const TransitionDipoles& mol)
{
    if (mol.isotropic)
        return 0.0;
    return (mol.d[0] * std::conj(mol.m[1]) - mol.d[1] * std::conj(mol.m[0])).imag();
}

double d_parallel2(const TransitionDipoles& mol)
{
    if (mol.isotropic)
        return 2.0 / 3.0 * norm2(mol.d);
    return std::norm(mol.d[0]) + std::norm(mol.d[1]);
}

double d_plus_z2(const TransitionDipoles& mol)
{
    if (mol.isotropic)
        return 4.0 / 3.0 * norm2(mol.d);
    return norm2(mol.d) + std::norm(mol.d[2]);
}

double require_d2(const TransitionDipoles& mol, const char* who)
{
    const double d2 = norm2(mol.d);
    if (d2 == 0.0)
        throw PhysicsError(std::string(who) + ": electric dipole is zero");
    return d2;
}

// Medium evaluated at the transition frequency.
MediumResponse medium_at(const PlanarGeometry& g, const TransitionDipoles& mol)
{
    MediumResponse m = g.medium;
    if (m.omega == 0.0)
        m.omega = mol.omega_ik;
    else if (std::abs(m.omega - mol.omega_ik) > 1e-12 * std::abs(mol.omega_ik))
        throw PhysicsError("half-space: medium frequency differs from the transition frequency");
    return m;
}

ReflectionSet fresnel_from_kperp(const MediumResponse& med, cplx q, double k_par)
{
    const CircularWaveNumbers w = wave_numbers(med);
    const double k0 = w.k0;
    const cplx kpar2 = k0 * k0 - q * q;
    const cplx root = std::sqrt(med.eps / med.mu);
    const cplx inv = 1.0 / root;
    // b± = k⊥ a±, finite at k⊥ = 0
    const cplx bp = inv * k0 * sqrt_upper(w.k_plus * w.k_plus - kpar2) / w.k_plus;
    const cplx bm = inv * k0 * sqrt_upper(w.k_minus * w.k_minus - kpar2) / w.k_minus;
    const cplx e = med.eps / med.mu;
    const cplx D = (q + bm) * (q + e * bp) + (q + bp) * (q + e * bm);
    if (std::abs(D) == 0.0)
        throw PhysicsError("fresnel_general: pole at D = 0");
    ReflectionSet r;
    r.r_sp = -2.0 * I * root * q * (bp - bm) / D;
    r.r_ps = -r.r_sp;
    r.r_ss = ((q + bm) * (q - e * bp) + (q + bp) * (q - e * bm)) / D;
    r.r_pp = ((q - bm) * (q + e * bp) + (q - bp) * (q + e * bm)) / D;
    r.k_par = k_par;
    r.omega = med.omega;
    return r;
}

template <class Acc>
void check_quadrature(const Acc& r, const QuadratureSpec& spec, const char* who)
{
    if (r.converged)
        return;
    double scale = 0.0;
    for (const auto& v : r.value)
        scale = std::max(scale, std::abs(v));
    if (r.err_estimate > spec.fail_rel_tol * scale + spec.abs_floor)
        throw QuadratureError(std::string(who) + ": quadrature did not converge (error estimate "
                                  + std::to_string(r.err_estimate) + ")",
                              r.err_estimate);
}

// Both legs of ∫ d²k∥/k⊥ after the azimuth average, for a 2-vector integrand
// g(k⊥) that already carries e^{2ik⊥z}: ∫_0^{k0} g(t) dt - i ∫_0^∞ g(iκ) dκ.
template <class G>
CVec<2> two_legs(G g, double k0, double z, const QuadratureSpec& spec, ExecPolicy policy,
                 const std::vector<double>& kappa_breaks, const char* who)
{
    auto trav = [&g](double t) { return g(cplx(t, 0.0)); };
    auto evan = [&g](double k) { return g(cplx(0.0, k)); };
    const auto rt = integrate_traveling_vec<2>(trav, k0, z, spec, policy);
    check_quadrature(rt, spec, who);
    const auto re = integrate_evanescent_vec<2>(evan, z, spec, policy, kappa_breaks);
    check_quadrature(re, spec, who);
    return {rt.value[0] - I * re.value[0], rt.value[1] - I * re.value[1]};
}

}  // namespace

cplx sqrt_upper(cplx x)
{
    const cplx r = std::sqrt(x);
    return r.imag() < 0.0 ? -r : r;
}

WaveGeometry polarization_vectors(double k_par, double k0, double azimuth)
{
    if (!(k_par >= 0.0) || !(k0 > 0.0))
        throw PhysicsError("polarization_vectors: need k_par >= 0 and k0 > 0");
    WaveGeometry w;
    w.k_par = k_par;
    w.k0 = k0;
    w.k_perp = sqrt_upper(cplx(k0 * k0 - k_par * k_par, 0.0));
    const double phi = k_par == 0.0 ? 0.0 : azimuth;
    const double c = std::cos(phi), s = std::sin(phi);
    w.e_z = {0.0, 0.0, 1.0};
    w.e_s = {s, -c, 0.0};
    for (int sg = 0; sg < 2; ++sg) {
        const double pm = sg == 0 ? 1.0 : -1.0;
        Vec3 e{-pm * w.k_perp * c / k0, -pm * w.k_perp * s / k0, k_par / k0};
        (sg == 0 ? w.e_p_plus : w.e_p_minus) = e;
    }
    return w;
}

ReflectionSet fresnel_general(const MediumResponse& med, double k_par)
{
    const double k0 = med.k0();
    if (!(k0 > 0.0))
        throw PhysicsError("fresnel_general: medium frequency must be positive");
    return fresnel_from_kperp(med, sqrt_upper(cplx(k0 * k0 - k_par * k_par, 0.0)), k_par);
}

ReflectionSet fresnel_general_kperp(const MediumResponse& med, cplx k_perp)
{
    if (!(med.k0() > 0.0))
        throw PhysicsError("fresnel_general: medium frequency must be positive");
    const cplx kpar2 = med.k0() * med.k0() - k_perp * k_perp;
    return fresnel_from_kperp(med, k_perp, std::sqrt(std::max(0.0, kpar2.real())));
}

ReflectionSet fresnel_nonretarded(const MediumResponse& med)
{
    const cplx e = med.eps, mu = med.mu, k = med.kappa;
    const cplx N = e * mu - k * k + e + mu + 1.0;
    if (std::abs(N) == 0.0)
        throw PhysicsError("fresnel_nonretarded: pole at εμ - κ² + ε + μ + 1 = 0");
    ReflectionSet r;
    r.r_sp = 2.0 * I * k / N;
    r.r_ps = -r.r_sp;
    r.r_ss = (e * mu - k * k - e + mu - 1.0) / N;
    r.r_pp = (e * mu - k * k + e - mu - 1.0) / N;
    r.omega = med.omega;
    r.k_par = std::numeric_limits<double>::infinity();
    return r;
}

ReflectionSet fresnel_retarded(const MediumResponse& med)
{
    const CircularWaveNumbers w = wave_numbers(med);
    const cplx kp = w.k_plus, km = w.k_minus;
    const double akp = std::abs(kp), akm = std::abs(km);
    const cplx n = w.n_r;
    const cplx A = kp * akm - km * akp;
    const cplx S = kp * akm + km * akp;
    const cplx P = kp * km;
    const double Pa = std::abs(km * kp);
    const cplx plus = (med.eps + med.mu) / n, minus = (med.eps - med.mu) / n;
    const cplx den_sp = 2.0 * plus * (P + Pa) + S;
    const cplx den = 2.0 * (P + Pa) + plus * S;
    if (std::abs(den_sp) == 0.0 || std::abs(den) == 0.0)
        throw PhysicsError("fresnel_retarded: vanishing denominator");
    ReflectionSet r;
    r.r_sp = 2.0 * I * A / den_sp;
    r.r_ps = -r.r_sp;
    r.r_ss = (2.0 * (P - Pa) - minus * S) / den;
    r.r_pp = (2.0 * (P - Pa) + minus * S) / den;
    r.omega = med.omega;
    return r;
}

ReflectionSet fresnel_perfect_mirror(Handedness h, double k_par, double omega)
{
    const double s = mirror_sign(h);
    return {0.0, 0.0, s, -s, k_par, omega};
}

std::vector<double> evanescent_branch_points(const MediumResponse& med)
{
    const CircularWaveNumbers w = wave_numbers(med);
    std::vector<double> out;
    for (cplx k : {w.k_plus, w.k_minus}) {
        const double d = (k * k).real() - w.k0 * w.k0;
        if (d > 0.0)
            out.push_back(std::sqrt(d));
    }
    return out;
}

CurlGreens curl_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                                const QuadratureSpec& spec, ExecPolicy policy,
                                const std::vector<double>& kappa_breaks)
{
    require_height(geom);
    const double z = geom.z_m;
    // [diagonal weight, antisymmetric weight] of the azimuth-averaged integrand
    auto g = [&](cplx q) {
        const ReflectionSet r = refl(q);
        const cplx ph = std::exp(2.0 * I * q * z);
        return CVec<2>{ph * r.r_sp * (1.0 - q * q / (k0 * k0)), ph * (q / k0) * (r.r_ss - r.r_pp)};
    };
    const CVec<2> v = two_legs(g, k0, z, spec, policy, kappa_breaks, "curl_scatter_numeric");
    const cplx pref = k0 / (8.0 * kPi);
    CurlGreens out;
    out.kind = CurlKind::full;
    out.matrix[0][0] = out.matrix[1][1] = pref * v[0];
    out.matrix[2][2] = 2.0 * pref * v[0];
    out.matrix[0][1] = pref * v[1];
    out.matrix[1][0] = -pref * v[1];
    return out;
}

CurlGreens curl_img_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                                    const QuadratureSpec& spec, ExecPolicy policy,
                                    const std::vector<double>& kappa_breaks)
{
    const CurlGreens full = curl_scatter_numeric(geom, k0, refl, spec, policy, kappa_breaks);
    CurlGreens out;
    out.kind = CurlKind::imaginary_part;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.matrix[i][j] = full.matrix[i][j].imag();
    return out;
}

Mat3 img_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                         const QuadratureSpec& spec, ExecPolicy policy,
                         const std::vector<double>& kappa_breaks)
{
    require_height(geom);
    const double z = geom.z_m;
    // [in-plane weight, zz weight]; the r_sp, r_ps terms average to zero
    auto g = [&](cplx q) {
        const ReflectionSet r = refl(q);
        const cplx ph = std::exp(2.0 * I * q * z);
        const cplx t = q * q / (k0 * k0);
        return CVec<2>{ph * 0.5 * (r.r_ss - r.r_pp * t), ph * r.r_pp * (1.0 - t)};
    };
    const CVec<2> v = two_legs(g, k0, z, spec, policy, kappa_breaks, "img_scatter_numeric");
    const cplx pref = I / (4.0 * kPi);
    Mat3 out{};
    out[0][0] = out[1][1] = (pref * v[0]).imag();
    out[2][2] = (pref * v[1]).imag();
    return out;
}

CurlGreens curl_img_mirror_retarded(const PlanarGeometry& geom, double k0)
{
    require_height(geom);
    const double z = geom.z_m;
    const double v = -mirror_sign(geom.handedness) * std::sin(2.0 * k0 * z) / (16.0 * kPi * z * z);
    CurlGreens out{identity(v), CurlKind::imaginary_part};
    out.matrix[2][2] = 0.0;
    return out;
}

CurlGreens curl_img_mirror_nonretarded(const PlanarGeometry& geom, double k0)
{
    require_height(geom);
    const double z = geom.z_m;
    const double v = -mirror_sign(geom.handedness) / (32.0 * kPi * k0 * z * z * z);
    CurlGreens out{identity(v), CurlKind::imaginary_part};
    out.matrix[2][2] = 2.0 * v;
    return out;
}

CurlGreens curl_img_halfspace_retarded(const PlanarGeometry& geom)
{
    require_height(geom);
    const double z = geom.z_m, k0 = geom.medium.k0();
    const ReflectionSet r = fresnel_retarded(geom.medium);
    const double c = std::cos(k0 * z), s = std::sin(k0 * z);
    const double pref = k0 / (8.0 * kPi * z);
    const double diag = pref * ((1.0 - c) * r.r_sp.real() - s * r.r_sp.imag());
    const cplx rd = r.r_ss + r.r_pp;
    const double anti = pref * 0.5 * (s * rd.imag() - c * rd.real());
    CurlGreens out{identity(diag), CurlKind::imaginary_part};
    out.matrix[2][2] = 0.0;
    out.matrix[0][1] = anti;
    out.matrix[1][0] = -anti;
    return out;
}

CurlGreens curl_img_halfspace_nonretarded(const PlanarGeometry& geom)
{
    require_height(geom);
    const double z = geom.z_m, k0 = geom.medium.k0();
    const ReflectionSet r = fresnel_nonretarded(geom.medium);
    const double pref = 1.0 / (16.0 * kPi * z * z);
    CurlGreens out{identity(pref * I * r.r_sp), CurlKind::imaginary_part};
    out.matrix[2][2] = 2.0 * pref * I * r.r_sp;
    out.matrix[0][1] = -pref * (r.r_pp + r.r_ss) * z * k0;
    out.matrix[1][0] = pref * (r.r_pp + r.r_ss) * z * k0;
    return out;
}

double gamma_ch_mirror_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const double w = mol.omega_ik, z = geom.z_m;
    return mirror_sign(geom.handedness) * kMu0 * w / (4.0 * kPi * kHbar * z * z)
           * std::sin(2.0 * w * z / kC) * rot_parallel(mol);
}

double gamma_ch_mirror_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const double z = geom.z_m;
    return mirror_sign(geom.handedness) * kMu0 * kC / (8.0 * kHbar * kPi * z * z * z)
           * rot_full_plus_z(mol);
}

double gamma_ch_mirror_nonretarded_iso_printed(const PlanarGeometry& geom,
                                               const TransitionDipoles& mol)
{
    require_height(geom);
    const double z = geom.z_m;
    return mirror_sign(geom.handedness) * kMu0 * kC * rotatory_strength(mol)
           / (8.0 * kHbar * kPi * z * z * z);
}

double gamma_el_mirror_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol,
                                ElectricForm form)
{
    require_height(geom);
    const double w = mol.omega_ik, z = geom.z_m;
    const double sn = std::sin(2.0 * w * z / kC);
    if (form == ElectricForm::printed)
        return kMu0 * d_parallel2(mol) / (8.0 * kPi * kHbar * z) * sn;
    return kMu0 * w * w * d_parallel2(mol) / (4.0 * kPi * kHbar * z) * sn;
}

double s_mirror(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit)
{
    require_height(geom);
    const double d2 = require_d2(mol, "s_mirror");
    const double w = mol.omega_ik, z = geom.z_m, R = rotatory_strength(mol);
    const double sg = mirror_sign(geom.handedness);
    if (limit == Limit::retarded)
        return sg * kC * R / (2.0 * w * w * z * z * d2) * std::sin(2.0 * w * z / kC);
    if (limit == Limit::nonretarded)
        return sg * 3.0 * kC * kC * R / (w * w * w * z * z * z * d2);
    throw PhysicsError("s_mirror: the numeric path uses the rate quotient");
}

ChiralSplit gamma_ch_halfspace_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const MediumResponse med = medium_at(geom, mol);
    const ReflectionSet r = fresnel_retarded(med);
    const double w = mol.omega_ik, z = geom.z_m;
    const double c2 = std::cos(2.0 * w * z / kC), s2 = std::sin(2.0 * w * z / kC);
    const double pref = kMu0 * w * w / (2.0 * kPi * kHbar * kC * z);
    const cplx rd = r.r_ss + r.r_pp;
    ChiralSplit out;
    out.disc = pref * rot_parallel(mol) * ((c2 - 1.0) * r.r_sp.real() + s2 * r.r_sp.imag());
    out.aniso = pref * 0.5 * rot_cross_z(mol) * (c2 * rd.real() - s2 * rd.imag());
    return out;
}

ChiralSplit gamma_ch_halfspace_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const MediumResponse med = medium_at(geom, mol);
    if (!med.lossless())
        throw PhysicsError("half-space nonretarded closed form assumes a lossless medium");
    const ReflectionSet r = fresnel_nonretarded(med);
    const double w = mol.omega_ik, z = geom.z_m;
    ChiralSplit out;
    out.disc = (-I * kMu0 * w / (4.0 * kPi * kHbar * z * z) * r.r_sp).real() * rot_full_plus_z(mol);
    out.aniso = -kMu0 * w * w / (4.0 * kPi * kC * kHbar * z) * (r.r_pp + r.r_ss).real()
                * rot_cross_z(mol);
    return out;
}

double gamma_ch_halfspace_nonretarded_iso(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const MediumResponse med = medium_at(geom, mol);
    if (!med.lossless())
        throw PhysicsError("half-space nonretarded closed form assumes a lossless medium");
    const ReflectionSet r = fresnel_nonretarded(med);
    const double w = mol.omega_ik, z = geom.z_m;
    return (-I * w * rotatory_strength(mol) * r.r_sp / (3.0 * kPi * kHbar * kEps0 * kC * kC * z * z))
        .real();
}

double gamma_el_halfspace_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const MediumResponse med = medium_at(geom, mol);
    const cplx sm = std::sqrt(med.mu), se = std::sqrt(med.eps);
    const cplx rs = (sm - se) / (sm + se);
    const double w = mol.omega_ik, z = geom.z_m;
    const double c2 = std::cos(2.0 * w * z / kC), s2 = std::sin(2.0 * w * z / kC);
    return kMu0 * w * w / (4.0 * kHbar * kPi * z) * d_parallel2(mol)
           * (c2 * rs.imag() + s2 * rs.real());
}

double gamma_el_halfspace_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol)
{
    require_height(geom);
    const cplx e = medium_at(geom, mol).eps;
    const double z = geom.z_m;
    const cplx rp = (e - 1.0) / (e + 1.0);
    return d_plus_z2(mol) * rp.imag() / (16.0 * kPi * kHbar * kEps0 * z * z * z);
}

double gamma_el_halfspace_nonretarded_printed(const PlanarGeometry& geom,
                                              const TransitionDipoles& mol)
{
    require_height(geom);
    const cplx e = medium_at(geom, mol).eps;
    const double z = geom.z_m, w = mol.omega_ik;
    return d_plus_z2(mol) / (8.0 * kHbar * kPi * kEps0 * w * w * z * z * z) * e.imag()
           / std::abs(e + 1.0);
}

double s_halfspace(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit)
{
    require_height(geom);
    const double d2 = require_d2(mol, "s_halfspace");
    const MediumResponse med = medium_at(geom, mol);
    const double w = mol.omega_ik, z = geom.z_m, R = rotatory_strength(mol);
    if (limit == Limit::retarded) {
        const ReflectionSet r = fresnel_retarded(med);
        const double c2 = std::cos(2.0 * w * z / kC), s2 = std::sin(2.0 * w * z / kC);
        return R / (w * z * d2) * ((c2 - 1.0) * r.r_sp.real() + s2 * r.r_sp.imag());
    }
    if (limit == Limit::nonretarded) {
        const ReflectionSet r = fresnel_nonretarded(med);
        return (I * kC * R * r.r_sp / (w * w * z * z * d2)).real();
    }
    throw PhysicsError("s_halfspace: the numeric path uses the rate quotient");
}

namespace {

void advise(RateBreakdown& r, double k0z, Limit limit)
{
    if (limit == Limit::retarded && k0z < 10.0)
        r.advisory = "retarded closed form used at k0 z = " + std::to_string(k0z)
                     + " (valid for k0 z >> 1)";
    if (limit == Limit::nonretarded && k0z > 0.1)
        r.advisory = "nonretarded closed form used at k0 z = " + std::to_string(k0z)
                     + " (valid for k0 z << 1)";
}

// Antisymmetric xy block of a curl, i.e. the r_ss - r_pp channel.
CurlGreens antisymmetric_part(const CurlGreens& c)
{
    CurlGreens a;
    a.kind = c.kind;
    a.matrix[0][1] = 0.5 * (c.matrix[0][1] - c.matrix[1][0]);
    a.matrix[1][0] = -a.matrix[0][1];
    return a;
}

void finish_numeric(RateBreakdown& r, const CurlGreens& curl, const Mat3& img,
                    const TransitionDipoles& mol)
{
    r.gamma_ch = gamma_ch_from_curl(curl, mol);
    r.gamma_ch_aniso = gamma_ch_from_curl(antisymmetric_part(curl), mol);
    r.gamma_el = gamma_el_from_img(img, mol);
    r.gamma_total = r.gamma_vac + r.gamma_el + r.gamma_ch;
    r.s_disc = norm2(mol.d) > 0.0
                   ? degree_of_discrimination(r.gamma_ch - r.gamma_ch_aniso, r.gamma_vac + r.gamma_el)
                   : 0.0;
    r.method = Method::quadrature;
}

}  // namespace

RateBreakdown rates_mirror(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit,
                           const PlanarOptions& opt)
{
    require_height(geom);
    const double k0 = mol.omega_ik / kC;
    RateBreakdown r;
    r.gamma_vac = gamma_vacuum(mol);
    r.assembly = Assembly::vacuum_plus_scattering;
    if (limit == Limit::numeric) {
        const ReflectionSet mirror = fresnel_perfect_mirror(geom.handedness, 0.0, mol.omega_ik);
        const ReflectionFn refl = [mirror](cplx) { return mirror; };
        const CurlGreens curl = curl_img_scatter_numeric(geom, k0, refl, opt.quadrature, opt.policy);
        const Mat3 img = img_scatter_numeric(geom, k0, refl, opt.quadrature, opt.policy);
        finish_numeric(r, curl, img, mol);
        return r;
    }
    if (limit == Limit::retarded) {
        r.gamma_ch = gamma_ch_mirror_retarded(geom, mol);
        r.gamma_el = gamma_el_mirror_retarded(geom, mol, opt.drreths_form);
    } else {
        r.gamma_ch = gamma_ch_mirror_nonretarded(geom, mol);
        r.gamma_el = 0.0;
    }
    r.gamma_total = r.gamma_vac + r.gamma_el + r.gamma_ch;
    r.s_disc = norm2(mol.d) > 0.0 ? s_mirror(geom, mol, limit) : 0.0;
    advise(r, k0 * geom.z_m, limit);
    return r;
}

RateBreakdown rates_halfspace(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit,
                              const PlanarOptions& opt)
{
    require_height(geom);
    const MediumResponse med = medium_at(geom, mol);
    const double k0 = med.k0();
    RateBreakdown r;
    r.gamma_vac = gamma_vacuum(mol);
    r.assembly = Assembly::vacuum_plus_scattering;
    if (limit == Limit::numeric) {
        const ReflectionFn refl = [med](cplx q) { return fresnel_general_kperp(med, q); };
        const std::vector<double> br = evanescent_branch_points(med);
        const CurlGreens curl =
            curl_img_scatter_numeric(geom, k0, refl, opt.quadrature, opt.policy, br);
        const Mat3 img = img_scatter_numeric(geom, k0, refl, opt.quadrature, opt.policy, br);
        finish_numeric(r, curl, img, mol);
        return r;
    }
    ChiralSplit ch;
    if (limit == Limit::retarded) {
        ch = gamma_ch_halfspace_retarded(geom, mol);
        r.gamma_el = gamma_el_halfspace_retarded(geom, mol);
    } else {
        ch = gamma_ch_halfspace_nonretarded(geom, mol);
        r.gamma_el = gamma_el_halfspace_nonretarded(geom, mol);
    }
    r.gamma_ch = ch.disc + ch.aniso;
    r.gamma_ch_aniso = ch.aniso;
    r.gamma_total = r.gamma_vac + r.gamma_el + r.gamma_ch;
    r.s_disc = norm2(mol.d) > 0.0 ? s_halfspace(geom, mol, limit) : 0.0;
    advise(r, k0 * geom.z_m, limit);
    return r;
}

}  // namespace chiral
