#include "chiral/scenario.hpp"

#include "chiral/bulk.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace chiral {

using nlohmann::json;

namespace {

constexpr cplx I{0.0, 1.0};

[[noreturn]] void schema(const std::string& msg)
{
    throw SchemaError("scenario: " + msg);
}

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        schema(where + "." + key + " is required");
    return j.at(key);
}

double as_number(const json& j, const std::string& where)
{
    if (!j.is_number())
        schema(where + " must be a number");
    return j.get<double>();
}

// Complex numbers are [re, im]; a bare number is taken as real.
cplx as_complex(const json& j, const std::string& where)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        schema(where + " must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 as_vec3(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 3)
        schema(where + " must have three components");
    return {as_complex(j[0], where + "[0]"), as_complex(j[1], where + "[1]"),
            as_complex(j[2], where + "[2]")};
}

ChannelModel as_channel(const json& j, const std::string& where)
{
    ChannelModel c;
    if (!j.is_object()) {
        c.value = as_complex(j, where);
        return c;
    }
    const std::string model = need(j, "model", where).is_string() ? j["model"].get<std::string>() : "";
    if (model != "lorentz")
        schema(where + ".model must be \"lorentz\"");
    c.lorentz = true;
    c.value = j.contains("background") ? as_complex(j["background"], where + ".background") : 0.0;
    c.strength = as_number(need(j, "strength", where), where + ".strength");
    c.omega0 = as_number(need(j, "omega0", where), where + ".omega0");
    c.gamma = j.contains("gamma") ? as_number(j["gamma"], where + ".gamma") : 0.0;
    if (!(c.omega0 > 0.0))
        schema(where + ".omega0 must be positive");
    return c;
}

LimitChoice as_limit(const json& j, const std::string& where)
{
    const std::string s = j.is_string() ? j.get<std::string>() : "";
    if (s == "auto") return LimitChoice::automatic;
    if (s == "retarded") return LimitChoice::retarded;
    if (s == "nonretarded") return LimitChoice::nonretarded;
    if (s == "numeric") return LimitChoice::numeric;
    schema(where + " must be one of auto, retarded, nonretarded, numeric");
}

const char* limit_name(Limit l)
{
    switch (l) {
    case Limit::retarded: return "retarded";
    case Limit::nonretarded: return "nonretarded";
    case Limit::numeric: return "numeric";
    }
    return "?";
}

Limit resolve_limit(const Scenario& s, LimitChoice c)
{
    switch (c) {
    case LimitChoice::retarded: return Limit::retarded;
    case LimitChoice::nonretarded: return Limit::nonretarded;
    case LimitChoice::numeric: return Limit::numeric;
    case LimitChoice::automatic: break;
    }
    const double k0z = s.molecule.omega_ik / kC * s.z_m;
    if (k0z < s.auto_nonretarded_below) return Limit::nonretarded;
    if (k0z > s.auto_retarded_above) return Limit::retarded;
    return Limit::numeric;
}

RateBreakdown planar(const Scenario& s, Limit limit, ExecPolicy policy)
{
    PlanarGeometry g;
    g.z_m = s.z_m;
    g.handedness = s.handedness;
    g.medium = s.medium();
    PlanarOptions o;
    o.quadrature = s.quadrature;
    o.policy = policy;
    o.drreths_form = s.drreths_form;
    if (s.geometry == GeometryType::mirror)
        return rates_mirror(g, s.molecule, limit, o);
    return rates_halfspace(g, s.molecule, limit, o);
}

json rates_json(const RateBreakdown& r)
{
    json j = {{"gamma_el", r.gamma_el},       {"gamma_ch", r.gamma_ch},
              {"gamma_ch_aniso", r.gamma_ch_aniso}, {"gamma_vac", r.gamma_vac},
              {"gamma_total", r.gamma_total}, {"s_disc", r.s_disc},
              {"method", to_string(r.method)}, {"assembly", to_string(r.assembly)}};
    if (!r.advisory.empty())
        j["advisory"] = r.advisory;
    return j;
}

}  // namespace

cplx ChannelModel::eval(double omega, bool chiral_channel) const
{
    if (!lorentz)
        return value;
    const cplx den = omega0 * omega0 - omega * omega - I * gamma * omega;
    if (std::abs(den) == 0.0)
        throw PhysicsError("Lorentz model: undamped resonance at the transition frequency");
    const double num = chiral_channel ? omega0 * omega : omega0 * omega0;
    return value + strength * num / den;
}

MediumResponse Scenario::medium() const
{
    const double w = molecule.omega_ik;
    return {eps.eval(w, false), mu.eval(w, false), kappa.eval(w, true), w};
}

Scenario parse_scenario(const json& j)
{
    if (!j.is_object())
        schema("top level must be an object");
    Scenario s;
    const json& mol = need(j, "molecule", "");
    s.molecule.d = as_vec3(need(mol, "d", "molecule"), "molecule.d");
    s.molecule.m = as_vec3(need(mol, "m", "molecule"), "molecule.m");
    s.molecule.omega_ik = as_number(need(mol, "omega", "molecule"), "molecule.omega");
    if (mol.contains("isotropic")) {
        if (!mol["isotropic"].is_boolean())
            schema("molecule.isotropic must be true or false");
        s.molecule.isotropic = mol["isotropic"].get<bool>();
    }
    if (!(s.molecule.omega_ik > 0.0))
        schema("molecule.omega must be positive");

    if (j.contains("medium")) {
        const json& m = j["medium"];
        if (!m.is_object())
            schema("medium must be an object");
        if (m.contains("eps")) s.eps = as_channel(m["eps"], "medium.eps");
        if (m.contains("mu")) s.mu = as_channel(m["mu"], "medium.mu");
        if (m.contains("kappa")) s.kappa = as_channel(m["kappa"], "medium.kappa");
    }

    const json& g = need(j, "geometry", "");
    const std::string type = need(g, "type", "geometry").is_string() ? g["type"].get<std::string>() : "";
    if (type == "bulk") {
        s.geometry = GeometryType::bulk;
    } else if (type == "bulk_lfc") {
        s.geometry = GeometryType::bulk_lfc;
        s.radius = as_number(need(g, "radius", "geometry"), "geometry.radius");
        if (!(s.radius > 0.0))
            schema("geometry.radius must be positive");
    } else if (type == "mirror" || type == "halfspace") {
        s.geometry = type == "mirror" ? GeometryType::mirror : GeometryType::halfspace;
        s.z_m = as_number(need(g, "z_m", "geometry"), "geometry.z_m");
        if (!(s.z_m > 0.0))
            schema("geometry.z_m must be positive");
        if (type == "mirror" && g.contains("handedness")) {
            const std::string h = g["handedness"].is_string() ? g["handedness"].get<std::string>() : "";
            if (h == "right") s.handedness = Handedness::right;
            else if (h == "left") s.handedness = Handedness::left;
            else schema("geometry.handedness must be right or left");
        }
    } else {
        schema("geometry.type must be one of bulk, bulk_lfc, mirror, halfspace");
    }

    if (j.contains("method")) {
        const json& m = j["method"];
        if (!m.is_object())
            schema("method must be an object");
        if (m.contains("limit")) s.limit = as_limit(m["limit"], "method.limit");
        if (m.contains("compare")) s.compare = as_limit(m["compare"], "method.compare");
        if (m.contains("thresholds")) {
            const json& t = m["thresholds"];
            if (t.contains("nonretarded_below"))
                s.auto_nonretarded_below = as_number(t["nonretarded_below"], "method.thresholds.nonretarded_below");
            if (t.contains("retarded_above"))
                s.auto_retarded_above = as_number(t["retarded_above"], "method.thresholds.retarded_above");
        }
        if (m.contains("quadrature")) {
            const json& q = m["quadrature"];
            if (q.contains("rel_tol")) s.quadrature.rel_tol = as_number(q["rel_tol"], "method.quadrature.rel_tol");
            if (q.contains("abs_floor")) s.quadrature.abs_floor = as_number(q["abs_floor"], "method.quadrature.abs_floor");
            if (q.contains("max_panels")) s.quadrature.max_panels = int(as_number(q["max_panels"], "method.quadrature.max_panels"));
            if (q.contains("evanescent_cutoff_u"))
                s.quadrature.evanescent_cutoff_u = as_number(q["evanescent_cutoff_u"], "method.quadrature.evanescent_cutoff_u");
            if (q.contains("fail_rel_tol"))
                s.quadrature.fail_rel_tol = as_number(q["fail_rel_tol"], "method.quadrature.fail_rel_tol");
            if (!(s.quadrature.rel_tol > 0.0) || s.quadrature.max_panels < 1)
                schema("method.quadrature needs rel_tol > 0 and max_panels >= 1");
        }
        if (m.contains("f0_source")) {
            const std::string f = m["f0_source"].is_string() ? m["f0_source"].get<std::string>() : "";
            if (f == "main") s.f0_source = F0Source::main;
            else if (f == "appendix") s.f0_source = F0Source::appendix;
            else schema("method.f0_source must be main or appendix");
        }
        if (m.contains("drreths_form")) {
            const std::string f = m["drreths_form"].is_string() ? m["drreths_form"].get<std::string>() : "";
            if (f == "printed") s.drreths_form = ElectricForm::printed;
            else if (f == "dimensional") s.drreths_form = ElectricForm::dimensional;
            else schema("method.drreths_form must be printed or dimensional");
        }
    }
    return s;
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open scenario file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }
}

RateOutcome evaluate(const Scenario& s, ExecPolicy policy)
{
    RateOutcome out;
    const MediumResponse med = s.medium();
    switch (s.geometry) {
    case GeometryType::bulk:
        out.rates = rates_bulk(med, s.molecule);
        out.limit_used = "bulk";
        return out;
    case GeometryType::bulk_lfc: {
        CavityConfig cav;
        cav.radius_a = s.radius;
        cav.host = med;
        out.rates = rates_bulk_lfc(cav, s.molecule, s.f0_source);
        out.limit_used = "bulk_lfc";
        return out;
    }
    case GeometryType::mirror:
    case GeometryType::halfspace:
        break;
    }
    const Limit lim = resolve_limit(s, s.limit);
    out.rates = planar(s, lim, policy);
    out.limit_used = limit_name(lim);
    if (s.compare) {
        const Limit other = resolve_limit(s, *s.compare);
        out.comparison = planar(s, other, policy);
        out.comparison_limit = limit_name(other);
        const double ref = out.comparison->gamma_ch;
        out.comparison_rel_diff = ref != 0.0 ? std::abs(out.rates.gamma_ch - ref) / std::abs(ref)
                                             : std::numeric_limits<double>::infinity();
    }
    return out;
}

json to_json(const RateOutcome& r)
{
    json j = rates_json(r.rates);
    j["limit"] = r.limit_used;
    j["units"] = {{"rates", "1/s"}, {"s_disc", "dimensionless"}};
    if (r.comparison) {
        j["comparison"] = rates_json(*r.comparison);
        j["comparison"]["limit"] = r.comparison_limit;
        j["comparison"]["gamma_ch_rel_diff"] = r.comparison_rel_diff;
    }
    return j;
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string human_table(const RateOutcome& r)
{
    std::ostringstream os;
    auto row = [&os](const char* k, double v, const char* unit) {
        os << k;
        for (std::size_t i = std::char_traits<char>::length(k); i < 16; ++i)
            os << ' ';
        os << format_double(v) << ' ' << unit << '\n';
    };
    row("gamma_el", r.rates.gamma_el, "1/s");
    row("gamma_ch", r.rates.gamma_ch, "1/s");
    row("gamma_ch_aniso", r.rates.gamma_ch_aniso, "1/s");
    row("gamma_vac", r.rates.gamma_vac, "1/s");
    row("gamma_total", r.rates.gamma_total, "1/s");
    row("s_disc", r.rates.s_disc, "");
    os << "method          " << to_string(r.rates.method) << " (" << r.limit_used << ")\n";
    os << "assembly        " << to_string(r.rates.assembly) << '\n';
    if (r.comparison) {
        os << "compare         " << r.comparison_limit << ": gamma_ch = "
           << format_double(r.comparison->gamma_ch) << " 1/s, rel diff "
           << format_double(r.comparison_rel_diff) << '\n';
    }
    if (!r.rates.advisory.empty())
        os << "note            " << r.rates.advisory << '\n';
    return os.str();
}

std::string rate_csv(const RateOutcome& r)
{
    const RateBreakdown& b = r.rates;
    std::string s = "gamma_el,gamma_ch,gamma_ch_aniso,gamma_vac,gamma_total,s_disc,method,limit\n";
    s += format_double(b.gamma_el) + ',' + format_double(b.gamma_ch) + ','
         + format_double(b.gamma_ch_aniso) + ',' + format_double(b.gamma_vac) + ','
         + format_double(b.gamma_total) + ',' + format_double(b.s_disc) + ','
         + to_string(b.method) + ',' + r.limit_used + '\n';
    return s;
}

void set_path(json& j, const std::string& path, double value)
{
    json* cur = &j;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (key.empty())
            throw SchemaError("sweep: malformed parameter path " + path);
        json* next;
        if (cur->is_array()) {
            std::size_t idx;
            try {
                idx = std::stoul(key);
            } catch (const std::exception&) {
                throw SchemaError("sweep: " + key + " is not an array index in " + path);
            }
            if (idx >= cur->size())
                throw SchemaError("sweep: index out of range in " + path);
            next = &(*cur)[idx];
        } else if (cur->is_object() && cur->contains(key)) {
            next = &(*cur)[key];
        } else {
            throw SchemaError("sweep: " + path + " does not address an existing field");
        }
        if (dot == std::string::npos) {
            if (!next->is_number())
                throw SchemaError("sweep: " + path + " is not a scalar number");
            *next = value;
            return;
        }
        cur = next;
        pos = dot + 1;
    }
}

std::vector<double> sweep_grid(double from, double to, int points, bool log_scale)
{
    if (points < 1)
        throw SchemaError("sweep: points must be >= 1");
    if (log_scale && !(from > 0.0 && to > 0.0))
        throw SchemaError("sweep: log grid needs positive bounds");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : double(i) / double(points - 1);
        g[std::size_t(i)] = log_scale ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                                      : from + t * (to - from);
    }
    g.front() = from;
    if (points > 1)
        g.back() = to;
    return g;
}

std::vector<SweepRow> run_sweep(const json& base, const std::string& path,
                                const std::vector<double>& grid, ExecPolicy policy)
{
    // Validate the path once so schema problems fail the whole run.
    {
        json probe = base;
        set_path(probe, path, grid.empty() ? 0.0 : grid.front());
    }
    std::vector<SweepRow> rows(grid.size());
    const long n = long(grid.size());
    auto point = [&](long i) {
        SweepRow& row = rows[std::size_t(i)];
        row.param = grid[std::size_t(i)];
        try {
            json j = base;
            set_path(j, path, row.param);
            // inner quadrature stays serial; the sweep owns the threads
            row.rates = evaluate(parse_scenario(j), ExecPolicy::serial).rates;
            row.status = "ok";
        } catch (const SchemaError&) {
            row.status = "schema_error";
        } catch (const PhysicsError&) {
            row.status = "physics_error";
        } catch (const QuadratureError&) {
            row.status = "quadrature_error";
        }
        if (row.status != "ok") {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.rates.gamma_el = row.rates.gamma_ch = row.rates.gamma_vac = row.rates.s_disc = nan;
        }
    };
    if (policy == ExecPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i)
            point(i);
    } else {
        for (long i = 0; i < n; ++i)
            point(i);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::string s = "param,gamma_el,gamma_ch,gamma_vac,s_disc,method,status\n";
    for (const SweepRow& r : rows) {
        s += format_double(r.param) + ',' + format_double(r.rates.gamma_el) + ','
             + format_double(r.rates.gamma_ch) + ',' + format_double(r.rates.gamma_vac) + ','
             + format_double(r.rates.s_disc) + ',' + (r.status == "ok" ? to_string(r.rates.method) : "")
             + ',' + r.status + '\n';
    }
    return s;
}

std::string fresnel_csv(const MediumResponse& med, double kpar_max, int points)
{
    if (points < 1)
        throw SchemaError("fresnel: points must be >= 1");
    if (!(kpar_max >= 0.0))
        throw SchemaError("fresnel: kpar-max must be non-negative");
    if (!(med.omega > 0.0))
        throw SchemaError("fresnel: omega must be positive");
    std::string s = "k_par,r_ss_re,r_ss_im,r_pp_re,r_pp_im,r_sp_re,r_sp_im,r_ps_re,r_ps_im,status\n";
    for (int i = 0; i < points; ++i) {
        const double kp = points == 1 ? 0.0 : kpar_max * double(i) / double(points - 1);
        std::string status = "ok";
        ReflectionSet r{};
        try {
            r = fresnel_general(med, kp);
        } catch (const PhysicsError&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            r.r_ss = r.r_pp = r.r_sp = r.r_ps = cplx(nan, nan);
            status = "pole";
        }
        s += format_double(kp);
        for (cplx c : {r.r_ss, r.r_pp, r.r_sp, r.r_ps})
            s += ',' + format_double(c.real()) + ',' + format_double(c.imag());
        s += ',' + status + '\n';
    }
    return s;
}

}  // namespace chiral
