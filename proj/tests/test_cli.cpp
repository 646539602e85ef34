#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chiral/scenario.hpp"
#include "cli_util.hpp"

#include <cmath>
#include <cstring>

using namespace chiral;
using namespace testing_util;
using nlohmann::json;

namespace {

json base_molecule()
{
    return {{"d", {{1e-30, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
            {"m", {{0.0, -1e-23}, {0.0, 0.0}, {0.0, 0.0}}},
            {"omega", 3e15},
            {"isotropic", true}};
}

json bulk_scenario(double kappa)
{
    return {{"molecule", base_molecule()},
            {"medium", {{"eps", 2.25}, {"mu", 1.0}, {"kappa", kappa}}},
            {"geometry", {{"type", "bulk"}}}};
}

json mirror_scenario(const char* hand, const char* limit)
{
    return {{"molecule", base_molecule()},
            {"geometry", {{"type", "mirror"}, {"z_m", 2e-7}, {"handedness", hand}}},
            {"method", {{"limit", limit}}}};
}

json run_json(const std::filesystem::path& dir, const std::string& name, const json& scenario)
{
    const auto cfg = dir / (name + ".json"), out = dir / (name + ".out");
    write_text(cfg, scenario.dump());
    REQUIRE(run_cli("rate --config '" + cfg.string() + "' --json", out) == 0);
    return json::parse(slurp(out));
}

}  // namespace

TEST_CASE("exit codes")
{
    const auto dir = scratch_dir();
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("rate") == 2);                       // missing --config
    CHECK(run_cli("rate --config /nonexistent.json") == 2);

    write_text(dir / "broken.json", "{ not json");
    CHECK(run_cli("rate --config '" + (dir / "broken.json").string() + "'") == 2);

    json missing = bulk_scenario(0.05);
    missing["molecule"].erase("omega");
    write_text(dir / "missing.json", missing.dump());
    CHECK(run_cli("rate --config '" + (dir / "missing.json").string() + "'") == 2);

    json lossy_nr = {{"molecule", base_molecule()},
                     {"medium", {{"eps", {2.25, 0.1}}, {"kappa", 0.05}}},
                     {"geometry", {{"type", "halfspace"}, {"z_m", 1e-9}}},
                     {"method", {{"limit", "nonretarded"}}}};
    write_text(dir / "lossy.json", lossy_nr.dump());
    CHECK(run_cli("rate --config '" + (dir / "lossy.json").string() + "'") == 3);

    json starved = mirror_scenario("right", "numeric");
    starved["method"]["quadrature"] = {{"max_panels", 1}, {"rel_tol", 1e-14}, {"fail_rel_tol", 1e-14}};
    write_text(dir / "starved.json", starved.dump());
    CHECK(run_cli("rate --config '" + (dir / "starved.json").string() + "'") == 4);

    CHECK(run_cli("fresnel --eps 2.25,x --mu 1,0 --kappa 0,0 --omega 3e15 --kpar-max 1e7 --points 3 --csv '"
                  + (dir / "f.csv").string() + "'") == 2);
}

TEST_CASE("bulk with κ = 0 has no chiral rate")
{
    const json j = run_json(scratch_dir(), "bulk0", bulk_scenario(0.0));
    CHECK(j["gamma_ch"].get<double>() == 0.0);
    CHECK(j["s_disc"].get<double>() == 0.0);
    CHECK(j["units"]["rates"] == "1/s");
}

TEST_CASE("mirror handedness flip negates gamma_ch exactly")
{
    const auto dir = scratch_dir();
    for (const char* lim : {"retarded", "nonretarded", "numeric"}) {
        const json r = run_json(dir, std::string("r_") + lim, mirror_scenario("right", lim));
        const json l = run_json(dir, std::string("l_") + lim, mirror_scenario("left", lim));
        CHECK(l["gamma_ch"].get<double>() == -r["gamma_ch"].get<double>());
        CHECK(l["gamma_el"].get<double>() == r["gamma_el"].get<double>());
    }
}

TEST_CASE("dual-method comparison is reported")
{
    json s = {{"molecule", base_molecule()},
              {"medium", {{"eps", 2.25}, {"kappa", 0.05}}},
              {"geometry", {{"type", "halfspace"}, {"z_m", 1e-9}}},
              {"method", {{"limit", "numeric"}, {"compare", "nonretarded"}}}};
    const json j = run_json(scratch_dir(), "compare", s);
    REQUIRE(j.contains("comparison"));
    CHECK(j["comparison"]["limit"] == "nonretarded");
    MESSAGE("numeric vs nonretarded gamma_ch rel diff = " << j["comparison"]["gamma_ch_rel_diff"].get<double>());
}

TEST_CASE("auto limit selection")
{
    auto pick = [](double z) {
        json s = mirror_scenario("right", "auto");
        s["geometry"]["z_m"] = z;
        return evaluate(parse_scenario(s), ExecPolicy::serial).limit_used;
    };
    CHECK(pick(1e-9) == "nonretarded");   // k0 z = 0.01
    CHECK(pick(1e-7) == "numeric");
    CHECK(pick(2e-6) == "retarded");      // k0 z = 20
}

TEST_CASE("sweep: retarded mirror oscillates with the sine nodes")
{
    const auto dir = scratch_dir();
    write_text(dir / "m.json", mirror_scenario("right", "retarded").dump());
    const double cw = kC / 3e15;
    const int n = 400;
    REQUIRE(run_cli("sweep --config '" + (dir / "m.json").string() + "' --param geometry.z_m --from "
                    + format_double(0.1 * cw) + " --to " + format_double(10 * cw) + " --points "
                    + std::to_string(n) + " --csv '" + (dir / "m.csv").string() + "'") == 0);
    const auto rows = parse_csv(slurp(dir / "m.csv"));
    REQUIRE(rows.size() == std::size_t(n) + 1);
    CHECK(rows[0] == std::vector<std::string>{"param", "gamma_el", "gamma_ch", "gamma_vac", "s_disc", "method", "status"});
    int crossings = 0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double z0 = std::stod(rows[i - 1][0]), z1 = std::stod(rows[i][0]);
        CHECK(z1 > z0);
        const double g0 = std::stod(rows[i - 1][2]), g1 = std::stod(rows[i][2]);
        if (g0 * g1 < 0.0) {
            ++crossings;
            // a node z = jπc/(2ω) lies inside the bracket
            const double j = std::floor(z1 / (kPi * cw / 2.0));
            CHECK(j * kPi * cw / 2.0 >= z0);
        }
    }
    // nodes at jπ/2 · c/ω for j = 1..6 in [0.1, 10] c/ω
    CHECK(crossings == 6);
}

TEST_CASE("sweep: bulk chiral rate against κ")
{
    const auto dir = scratch_dir();
    write_text(dir / "b.json", bulk_scenario(0.0).dump());
    REQUIRE(run_cli("sweep --config '" + (dir / "b.json").string()
                    + "' --param medium.kappa --from -0.1 --to 0.1 --points 21 --csv '" + (dir / "b.csv").string() + "'") == 0);
    const auto rows = parse_csv(slurp(dir / "b.csv"));
    double sxx = 0, sxy = 0, syy = 0, sx3y = 0, sx4 = 0, sx6 = 0;
    std::vector<double> x, y;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        x.push_back(std::stod(rows[i][0]));
        y.push_back(std::stod(rows[i][2]));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
        sx3y += x[i] * x[i] * x[i] * y[i];
        sx4 += std::pow(x[i], 4);
        sx6 += std::pow(x[i], 6);
    }
    // odd series: pure line through the origin, then line plus κ³
    const double r2_line = sxy * sxy / (sxx * syy);
    const double det = sxx * sx6 - sx4 * sx4;
    const double a = (sxy * sx6 - sx3y * sx4) / det, b = (sx3y * sxx - sxy * sx4) / det;
    double res = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        res += std::pow(y[i] - a * x[i] - b * x[i] * x[i] * x[i], 2);
    MESSAGE("linear R^2 = " << r2_line << ", with cubic term 1 - R^2 = " << res / syy);
    CHECK(r2_line >= 1.0 - 1e-6);
    CHECK(res / syy <= 1e-10);
    CHECK(std::stod(rows[11][2]) == 0.0);  // κ = 0 exactly on the grid midpoint
}

TEST_CASE("single-point sweep equals the rate run")
{
    const auto dir = scratch_dir();
    write_text(dir / "p.json", mirror_scenario("right", "retarded").dump());
    REQUIRE(run_cli("sweep --config '" + (dir / "p.json").string()
                    + "' --param geometry.z_m --from 2e-7 --to 2e-7 --points 1 --csv '" + (dir / "p.csv").string() + "'") == 0);
    REQUIRE(run_cli("rate --config '" + (dir / "p.json").string() + "' --csv '" + (dir / "r.csv").string() + "'") == 0);
    const auto s = parse_csv(slurp(dir / "p.csv")), r = parse_csv(slurp(dir / "r.csv"));
    REQUIRE(s.size() == 2);
    REQUIRE(r.size() == 2);
    CHECK(s[1][1] == r[1][0]);  // gamma_el
    CHECK(s[1][2] == r[1][1]);  // gamma_ch
    CHECK(s[1][3] == r[1][3]);  // gamma_vac
    CHECK(s[1][4] == r[1][5]);  // s_disc
}

TEST_CASE("failed sweep points are flagged, not fatal")
{
    const auto dir = scratch_dir();
    json s = {{"molecule", base_molecule()},
              {"medium", {{"eps", {2.25, 0.1}}, {"kappa", 0.05}}},
              {"geometry", {{"type", "halfspace"}, {"z_m", 1e-9}}},
              {"method", {{"limit", "nonretarded"}}}};
    write_text(dir / "f.json", s.dump());
    REQUIRE(run_cli("sweep --config '" + (dir / "f.json").string()
                    + "' --param medium.eps.1 --from 0 --to 0.1 --points 2 --csv '" + (dir / "f.csv").string() + "'") == 0);
    const auto rows = parse_csv(slurp(dir / "f.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][6] == "ok");
    CHECK(rows[2][6] == "physics_error");
    CHECK(rows[2][2] == "nan");
}

TEST_CASE("fresnel table")
{
    const auto dir = scratch_dir();
    const double k0 = 3e15 / kC;
    REQUIRE(run_cli("fresnel --eps 2.25,0 --mu 1,0 --kappa 0,0 --omega 3e15 --kpar-max " + format_double(0.99 * k0)
                    + " --points 50 --csv '" + (dir / "f0.csv").string() + "'") == 0);
    auto rows = parse_csv(slurp(dir / "f0.csv"));
    REQUIRE(rows.size() == 51);
    CHECK(rows[0].size() == 10);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][5]) == 0.0);
        CHECK(std::stod(rows[i][6]) == 0.0);
    }

    REQUIRE(run_cli("fresnel --eps 3.1,0 --mu 1.2,0 --kappa 0.2,0 --omega 3e15 --kpar-max " + format_double(3 * k0)
                    + " --points 120 --csv '" + (dir / "f1.csv").string() + "'") == 0);
    rows = parse_csv(slurp(dir / "f1.csv"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::vector<double> v;
        for (int c = 0; c < 9; ++c)
            v.push_back(std::stod(rows[i][c]));
        CHECK(v[7] == -v[5]);
        CHECK(v[8] == -v[6]);
        if (v[0] < k0) {
            CHECK(v[1] * v[1] + v[2] * v[2] + v[7] * v[7] + v[8] * v[8] <= 1.0 + 1e-12);
            CHECK(v[3] * v[3] + v[4] * v[4] + v[5] * v[5] + v[6] * v[6] <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("JSON output round-trips bit-exactly")
{
    const Scenario s = parse_scenario(load_json_file(kScenarios + "/halfspace.json"));
    const RateOutcome r = evaluate(s);
    const json back = json::parse(to_json(r).dump(2));
    for (const char* k : {"gamma_el", "gamma_ch", "gamma_ch_aniso", "gamma_vac", "gamma_total", "s_disc"}) {
        const double a = back[k].get<double>(), b = to_json(r)[k].get<double>();
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("golden files reproduce byte for byte")
{
    const auto dir = scratch_dir();
    for (const auto& g : golden_cases()) {
        const auto out = dir / (g.name + ".csv");
        REQUIRE(run_cli(with_output(g.args, out)) == 0);
        const std::string want = slurp(kScenarios + "/golden/" + g.name + ".csv");
        CHECK_MESSAGE(!want.empty(), g.name);
        CHECK_MESSAGE(slurp(out) == want, g.name);
    }
}
