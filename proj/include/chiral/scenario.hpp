#pragma once

#include "chiral/core.hpp"
#include "chiral/halfspace.hpp"
#include "chiral/onsager.hpp"
#include "chiral/sommerfeld.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chiral {

// Malformed or incomplete scenario input (CLI exit code 2).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Constant value, or a single-resonance Lorentz term on a background:
// ε, μ: bg + f ω0²/(ω0² - ω² - iγω);  κ: bg + f ω0 ω/(ω0² - ω² - iγω).
struct ChannelModel {
    bool lorentz = false;
    cplx value{0.0, 0.0};  // constant, or the background
    double strength = 0.0, omega0 = 0.0, gamma = 0.0;

    cplx eval(double omega, bool chiral_channel) const;
};

enum class GeometryType { bulk, bulk_lfc, mirror, halfspace };
enum class LimitChoice { automatic, retarded, nonretarded, numeric };

struct Scenario {
    TransitionDipoles molecule;
    ChannelModel eps{false, {1.0, 0.0}}, mu{false, {1.0, 0.0}}, kappa{false, {0.0, 0.0}};
    GeometryType geometry = GeometryType::bulk;
    double radius = 0.0;
    double z_m = 0.0;
    Handedness handedness = Handedness::right;
    LimitChoice limit = LimitChoice::automatic;
    double auto_nonretarded_below = 0.1;  // k0 z thresholds for `auto`
    double auto_retarded_above = 10.0;
    QuadratureSpec quadrature;
    F0Source f0_source = F0Source::appendix;
    ElectricForm drreths_form = ElectricForm::dimensional;
    std::optional<LimitChoice> compare;

    MediumResponse medium() const;  // evaluated at the transition frequency
};

Scenario parse_scenario(const nlohmann::json& j);
nlohmann::json load_json_file(const std::string& path);

struct RateOutcome {
    RateBreakdown rates;
    std::string limit_used;  // retarded | nonretarded | numeric | bulk
    std::optional<RateBreakdown> comparison;
    std::string comparison_limit;
    double comparison_rel_diff = 0.0;  // |Γ_ch - Γ_ch'| / |Γ_ch'|
};

RateOutcome evaluate(const Scenario& s, ExecPolicy policy = ExecPolicy::parallel);

nlohmann::json to_json(const RateOutcome& r);
std::string human_table(const RateOutcome& r);
std::string rate_csv(const RateOutcome& r);

// Sets a scalar addressed by a dotted path ("geometry.z_m", "medium.kappa.0").
void set_path(nlohmann::json& j, const std::string& path, double value);

struct SweepRow {
    double param = 0.0;
    RateBreakdown rates;
    std::string status;  // ok | physics_error | quadrature_error | schema_error
};

std::vector<double> sweep_grid(double from, double to, int points, bool log_scale);
// Points are evaluated concurrently; rows come back in grid order.
std::vector<SweepRow> run_sweep(const nlohmann::json& base, const std::string& path,
                                const std::vector<double>& grid,
                                ExecPolicy policy = ExecPolicy::parallel);
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string fresnel_csv(const MediumResponse& med, double kpar_max, int points);

std::string format_double(double x);  // %.17g

}  // namespace chiral
