#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace chiral {

using cplx = std::complex<double>;
using Vec3 = std::array<cplx, 3>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

struct PhysicalConstants {
    double c;
    double hbar;
    double eps0;
    double mu0;
};

// CODATA 2018; mu0 is derived so that c^2 eps0 mu0 == 1 up to rounding.
inline constexpr double kC = 299792458.0;
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kEps0 = 8.8541878128e-12;
inline constexpr double kMu0 = 1.0 / (kEps0 * kC * kC);
inline constexpr PhysicalConstants kSI{kC, kHbar, kEps0, kMu0};
inline constexpr double kPi = 3.14159265358979323846;

// Thrown when an operation's physical precondition fails (poles, lossy
// input to a lossless-only formula, asymptotics out of range, ...).
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MediumResponse {
    cplx eps{1.0, 0.0};
    cplx mu{1.0, 0.0};
    cplx kappa{0.0, 0.0};
    double omega = 0.0;

    cplx n_r() const { return std::sqrt(eps * mu); }
    double k0() const { return omega / kC; }
    bool lossless() const {
        return eps.imag() == 0.0 && mu.imag() == 0.0 && kappa.imag() == 0.0;
    }
};

struct TransitionDipoles {
    Vec3 d{};
    Vec3 m{};
    double omega_ik = 0.0;
    bool isotropic = false;
};

enum class CurlKind { full, imaginary_part };

struct CurlGreens {
    Mat3 matrix{};
    CurlKind kind = CurlKind::full;
};

// Serial reference or OpenMP-parallel evaluation; both give identical bits.
enum class ExecPolicy { serial, parallel };

enum class Method { closed_form, quadrature };

// How gamma_total was put together, since the geometries differ.
enum class Assembly {
    bulk_total,             // gamma_el already is the full in-medium rate
    vacuum_plus_scattering  // gamma_el, gamma_ch are scattering parts on top of gamma_vac
};

struct RateBreakdown {
    double gamma_el = 0.0;
    double gamma_ch = 0.0;
    // κ-dependent but non-discriminating part of gamma_ch (planar geometries,
    // Im[(d x m*).e_z] channel). Already included in gamma_ch.
    double gamma_ch_aniso = 0.0;
    double gamma_vac = 0.0;
    double gamma_total = 0.0;
    double s_disc = 0.0;
    Method method = Method::closed_form;
    Assembly assembly = Assembly::bulk_total;
    std::string advisory;  // validity-regime or tolerance notes, empty when none
};

const char* to_string(Method m);
const char* to_string(Assembly a);

double norm2(const Vec3& v);
cplx dot(const Vec3& a, const Vec3& b);  // sum a_i b_i, no conjugation
Vec3 conj(const Vec3& v);
Mat3 identity(cplx alpha);

// Im(d . m*)
double rotatory_strength(const TransitionDipoles& mol);

// Sign fixed against the bulk closed form, see README ("sign convention").
// A full curl is reduced to its entrywise imaginary part. Isotropic molecules
// contract with the orientation average m_i d_j* -> (m . d*) δ_ij / 3.
double gamma_ch_from_curl(const CurlGreens& curl, const TransitionDipoles& mol);
double gamma_el_from_img(const Mat3& img, const TransitionDipoles& mol);
double gamma_vacuum(const TransitionDipoles& mol);
double degree_of_discrimination(double gamma_disc, double gamma_nd);

}  // namespace chiral
