#pragma once

#include "chiral/core.hpp"

namespace chiral {

struct CircularWaveNumbers {
    cplx k_plus;
    cplx k_minus;
    double k0;
    cplx n_r;
};

// k_- = k0 (n_r + κ), k_+ = k0 (n_r - κ)
CircularWaveNumbers wave_numbers(const MediumResponse& med);

// Curl of the bulk Green's tensor at finite separation rho, separation along e_z.
CurlGreens curl_g0_finite(const MediumResponse& med, double rho);

// μ (k_+^3 - k_-^3) / (6π (k_+ + k_-)) · I, lossless media only.
CurlGreens curl_img_g0_coincident(const MediumResponse& med);

// Exact-cubic closed form of the chiral bulk rate. The small-κ printed form
// drops the factor (1 + κ²/(3 n_r²)); see gamma_ch_bulk_leading.
double gamma_ch_bulk(const MediumResponse& med, const TransitionDipoles& mol);
double gamma_ch_bulk_leading(const MediumResponse& med, const TransitionDipoles& mol);
double gamma_el_bulk(const MediumResponse& med, const TransitionDipoles& mol);
// -6 κ R / (c |d|²)
double s_bulk(const MediumResponse& med, const TransitionDipoles& mol);

RateBreakdown rates_bulk(const MediumResponse& med, const TransitionDipoles& mol);

}  // namespace chiral
