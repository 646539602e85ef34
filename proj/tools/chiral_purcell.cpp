#include "chiral/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace chiral;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitQuadrature = 4;

cplx parse_pair(const std::string& s, const char* flag)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos)
            return {std::stod(s), 0.0};
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw SchemaError(std::string(flag) + " expects RE,IM");
    }
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw SchemaError("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chirality-sensitive Purcell rates for molecules in chiral media and near chiral interfaces"};
    app.require_subcommand(1);

    std::string config, csv_path;
    bool as_json = false;
    auto* rate = app.add_subcommand("rate", "Rates for a single scenario");
    rate->add_option("--config", config, "Scenario JSON file")->required();
    rate->add_flag("--json", as_json, "Print JSON instead of the table");
    rate->add_option("--csv", csv_path, "Also write a one-row CSV");

    std::string param;
    double from = 0.0, to = 0.0;
    int points = 1;
    bool log_scale = false;
    auto* sweep = app.add_subcommand("sweep", "Sweep one scalar scenario field");
    sweep->add_option("--config", config, "Scenario JSON file")->required();
    sweep->add_option("--param", param, "Dotted path, e.g. geometry.z_m or medium.kappa.0")->required();
    sweep->add_option("--from", from)->required();
    sweep->add_option("--to", to)->required();
    sweep->add_option("--points", points)->required();
    sweep->add_flag("--log", log_scale, "Logarithmic grid");
    sweep->add_option("--csv", csv_path, "Output CSV")->required();

    std::string eps_s = "1,0", mu_s = "1,0", kappa_s = "0,0";
    double omega = 0.0, kpar_max = 0.0;
    int fpoints = 1;
    auto* fres = app.add_subcommand("fresnel", "Reflection coefficient table over k_par");
    fres->add_option("--eps", eps_s, "RE,IM")->required();
    fres->add_option("--mu", mu_s, "RE,IM")->required();
    fres->add_option("--kappa", kappa_s, "RE,IM")->required();
    fres->add_option("--omega", omega, "rad/s")->required();
    fres->add_option("--kpar-max", kpar_max, "Largest k_par in 1/m")->required();
    fres->add_option("--points", fpoints)->required();
    fres->add_option("--csv", csv_path, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitSchema;
    }

    try {
        if (*rate) {
            const RateOutcome r = evaluate(parse_scenario(load_json_file(config)));
            if (as_json)
                std::cout << to_json(r).dump(2) << '\n';
            else
                std::cout << human_table(r);
            if (!r.rates.advisory.empty())
                std::cerr << "warning: " << r.rates.advisory << '\n';
            if (!csv_path.empty())
                write_file(csv_path, rate_csv(r));
        } else if (*sweep) {
            const auto base = load_json_file(config);
            parse_scenario(base);
            const auto rows = run_sweep(base, param, sweep_grid(from, to, points, log_scale));
            write_file(csv_path, sweep_csv(rows));
            int failed = 0;
            for (const auto& row : rows)
                failed += row.status != "ok";
            if (failed)
                std::cerr << "warning: " << failed << " sweep point(s) failed, flagged in the CSV\n";
        } else if (*fres) {
            const MediumResponse med{parse_pair(eps_s, "--eps"), parse_pair(mu_s, "--mu"),
                                     parse_pair(kappa_s, "--kappa"), omega};
            write_file(csv_path, fresnel_csv(med, kpar_max, fpoints));
        }
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const PhysicsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPhysics;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitQuadrature;
    }
    return 0;
}
