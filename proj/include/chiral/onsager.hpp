#pragma once

#include "chiral/core.hpp"

#include <optional>

namespace chiral {

struct CavityConfig {
    double radius_a = 0.0;
    MediumResponse host;
    double max_k0a = 0.1;  // small-radius validity threshold
};

struct OnsagerCoefficients {
    cplx a0v, a0w, b0v, b0w;
};

struct FFactors {
    cplx f0, f1, f3;
};

struct CurlyF {
    cplx f_eps_mu;
    cplx f_kappa;
};

struct F0Main {
    cplx value;
    bool kappa_limit = false;  // true when the κ -> 0 limit was returned
};

enum class F0Source { main, appendix };

FFactors f_factors(const MediumResponse& med);
CurlyF curly_f(const MediumResponse& med);
F0Main f0_main(const MediumResponse& med);
// Test hook: same formula with caller-supplied F_εμ, F_κ.
F0Main f0_main_with(const MediumResponse& med, CurlyF F);

// Closed forms at a given κ; b0 via the κ -> -κ relation.
OnsagerCoefficients onsager_coefficients(const CavityConfig& cav);
cplx onsager_a0v(const MediumResponse& med, double a);
cplx onsager_a0w(const MediumResponse& med, double a);

CurlGreens curl_img_lfc(const CavityConfig& cav);

// forced_f0 replaces f0_selected (test hook for the uncorrected reduction).
double gamma_ch_lfc(const CavityConfig& cav, const TransitionDipoles& mol,
                    F0Source src = F0Source::appendix,
                    std::optional<double> forced_f0 = std::nullopt);
double gamma_ch_lfc_absorbing(const CavityConfig& cav, const TransitionDipoles& mol);
double gamma_ch_lfc_absorbing_full(const CavityConfig& cav, const TransitionDipoles& mol);
double gamma_ch_lfc_absorbing_mu1(const CavityConfig& cav, const TransitionDipoles& mol);
double gamma_el_lfc(const CavityConfig& cav, const TransitionDipoles& mol, bool absorbing);
double s_lfc(const CavityConfig& cav, const TransitionDipoles& mol, bool absorbing,
             F0Source src = F0Source::appendix);

// Lossless host -> lossless branch, otherwise the small-radius absorbing branch.
RateBreakdown rates_bulk_lfc(const CavityConfig& cav, const TransitionDipoles& mol,
                             F0Source src = F0Source::appendix);

}  // namespace chiral
