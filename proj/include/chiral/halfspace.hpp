#pragma once

#include "chiral/core.hpp"
#include "chiral/sommerfeld.hpp"

#include <functional>

namespace chiral {

enum class Handedness { right, left };

struct PlanarGeometry {
    double z_m = 0.0;
    Handedness handedness = Handedness::right;  // perfect mirror only
    MediumResponse medium;                      // half-space only
};

struct ReflectionSet {
    cplx r_ss, r_pp, r_sp, r_ps;
    double k_par = 0.0;
    double omega = 0.0;
};

struct WaveGeometry {
    double k_par = 0.0;
    cplx k_perp;  // Im k⊥ >= 0
    double k0 = 0.0;
    Vec3 e_s, e_p_plus, e_p_minus, e_z;
};

enum class Limit { retarded, nonretarded, numeric };
enum class ElectricForm { printed, dimensional };

struct PlanarOptions {
    QuadratureSpec quadrature;
    ExecPolicy policy = ExecPolicy::parallel;
    ElectricForm drreths_form = ElectricForm::dimensional;
};

// At k_par = 0 the in-plane direction falls back to e_x.
WaveGeometry polarization_vectors(double k_par, double k0, double azimuth);

// Branch of √ with Im >= 0.
cplx sqrt_upper(cplx x);

ReflectionSet fresnel_general(const MediumResponse& med, double k_par);
// Same coefficients parametrised by k⊥ (complex on the evanescent leg).
ReflectionSet fresnel_general_kperp(const MediumResponse& med, cplx k_perp);
ReflectionSet fresnel_nonretarded(const MediumResponse& med);
ReflectionSet fresnel_retarded(const MediumResponse& med);
ReflectionSet fresnel_perfect_mirror(Handedness h, double k_par = 0.0, double omega = 0.0);

// Reflection coefficients as a function of k⊥.
using ReflectionFn = std::function<ReflectionSet(cplx k_perp)>;

// Numerical azimuth-averaged coincidence curl; kind = imaginary_part, entries
// are Im of the complex result. Breakpoints are κ⊥ positions on the evanescent leg.
CurlGreens curl_img_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                                    const QuadratureSpec& spec = {},
                                    ExecPolicy policy = ExecPolicy::parallel,
                                    const std::vector<double>& kappa_breaks = {});
// Complex version of the same integral (kind = full).
CurlGreens curl_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                                const QuadratureSpec& spec = {},
                                ExecPolicy policy = ExecPolicy::parallel,
                                const std::vector<double>& kappa_breaks = {});
// Im G^(1)(r, r) by the same quadrature, for the electric rate.
Mat3 img_scatter_numeric(const PlanarGeometry& geom, double k0, const ReflectionFn& refl,
                         const QuadratureSpec& spec = {}, ExecPolicy policy = ExecPolicy::parallel,
                         const std::vector<double>& kappa_breaks = {});

// κ⊥ positions where √(k±² - k∥²) has a kink, k∥² = k0² + κ⊥².
std::vector<double> evanescent_branch_points(const MediumResponse& med);

// Printed closed-form curls (imaginary part).
CurlGreens curl_img_mirror_retarded(const PlanarGeometry& geom, double k0);
CurlGreens curl_img_mirror_nonretarded(const PlanarGeometry& geom, double k0);
CurlGreens curl_img_halfspace_retarded(const PlanarGeometry& geom);
CurlGreens curl_img_halfspace_nonretarded(const PlanarGeometry& geom);

// Printed closed-form rate pieces.
double gamma_ch_mirror_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
double gamma_ch_mirror_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
// Isotropic nonretarded mirror rate exactly as printed, ±μ0 c R/(8ħπz³).
// The 4/3 reduction of the general contraction gives 1/(6π) instead.
double gamma_ch_mirror_nonretarded_iso_printed(const PlanarGeometry& geom,
                                               const TransitionDipoles& mol);
double gamma_el_mirror_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol,
                                ElectricForm form);
double s_mirror(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit);

struct ChiralSplit {
    double disc = 0.0;   // r_sp channel
    double aniso = 0.0;  // r_ss + r_pp channel, Im[(d × m*) . e_z]
};
ChiralSplit gamma_ch_halfspace_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
ChiralSplit gamma_ch_halfspace_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
// -i ω R r_sp/(3πħε0c²z²), isotropic molecules
double gamma_ch_halfspace_nonretarded_iso(const PlanarGeometry& geom, const TransitionDipoles& mol);
double gamma_el_halfspace_retarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
// (|d|² + d_z²) Im r_p/(16πħε0 z³), r_p = (ε-1)/(ε+1)
double gamma_el_halfspace_nonretarded(const PlanarGeometry& geom, const TransitionDipoles& mol);
// As printed: extra 1/ω² and Im ε/|ε+1|.
double gamma_el_halfspace_nonretarded_printed(const PlanarGeometry& geom,
                                              const TransitionDipoles& mol);
double s_halfspace(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit);

RateBreakdown rates_mirror(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit,
                           const PlanarOptions& opt = {});
RateBreakdown rates_halfspace(const PlanarGeometry& geom, const TransitionDipoles& mol, Limit limit,
                              const PlanarOptions& opt = {});

}  // namespace chiral
