#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "vfso/csv.hpp"
#include "vfso/report.hpp"

namespace fs = std::filesystem;
namespace cfg = vfso::config;
namespace rp = vfso::report;
using json = nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("vfso_report_test_" + name);
    fs::remove_all(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VFSO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST(Csv, NumbersRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 42057787141.88515, 1e-300, -2.5e17}) {
        EXPECT_EQ(std::stod(vfso::csv::format_number(v)), v);
    }
    EXPECT_EQ(vfso::csv::format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Csv, QuotesSpecialFields) {
    EXPECT_EQ(vfso::csv::quote("plain"), "plain");
    EXPECT_EQ(vfso::csv::quote("a,b"), "\"a,b\"");
    EXPECT_EQ(vfso::csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(SweepCsv, FixedHeaderAndRowCount) {
    auto c = cfg::from_json(json{{"sweeps", {{{"name", "two"}, {"start", 1000}, {"stop", 2000}, {"points", 2}}}}});
    const auto b = rp::build_sweep(c);
    const auto& csv = b.files.at("sweep_two.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "variable,data_rate_bps,link_margin_db,l_fog_db,l_rain_db,l_cloud_db,l_sci_db,l_geo_db,error");
    EXPECT_EQ(count_lines(csv), 3u);
    EXPECT_NE(csv.find("\n1000,"), std::string::npos);
    EXPECT_NE(csv.find("\n2000,"), std::string::npos);
}

TEST(SweepCsv, ErrorRowsCarryMarker) {
    vfso::scenario::SweepResult r;
    vfso::scenario::SweepRow row;
    row.value = 5.0;
    row.error = "bad, input";
    r.rows.push_back(row);
    const auto csv = rp::sweep_csv(r);
    EXPECT_NE(csv.find("\n5,,,,,,,,\"bad, input\"\n"), std::string::npos) << csv;
}

TEST(BuildEvaluate, ClearSkyViable) {
    const auto b = rp::build_evaluate(cfg::from_json(json::object()));
    EXPECT_EQ(b.exit_code, rp::success);
    EXPECT_NE(b.summary.find("Gbit/s"), std::string::npos);
    EXPECT_TRUE(b.files.count("evaluate.csv"));
    EXPECT_TRUE(b.files.count(rp::resolved_config_file));
}

TEST(BuildEvaluate, CloudAndFogFails) {
    const auto b = rp::build_evaluate(cfg::from_json(json{{"scenario", "cloud_and_fog"}}));
    EXPECT_EQ(b.exit_code, rp::link_failure);
    EXPECT_NE(b.summary.find("LINK FAILURE"), std::string::npos);
}

TEST(BuildEvaluate, TargetEqualToRateGivesZeroMargin) {
    const auto base = cfg::from_json(json::object());
    const double rate = vfso::link_budget::evaluate_link(base.transceiver, base.link_geometry(),
                                                         base.weather_for("clear_sky"))
                            .data_rate_bps;
    const auto c = cfg::from_json(json{{"target_rate_bps", rate}});
    const auto r = vfso::link_budget::evaluate_link(c.transceiver, c.link_geometry(), c.weather_for("clear_sky"),
                                                    c.target_rate_bps);
    EXPECT_EQ(r.link_margin_db, 0.0);
    EXPECT_EQ(rp::build_evaluate(c).exit_code, rp::success);
}

TEST(BuildCost, WritesAllTables) {
    const auto b = rp::build_cost(cfg::from_json(json::object()));
    EXPECT_EQ(count_lines(b.files.at("layout.csv")), 1101u);
    EXPECT_EQ(count_lines(b.files.at("cost_summary.csv")), 5u);
    const auto& summary = b.files.at("cost_summary.csv");
    EXPECT_NE(summary.find("4,vertical_fso"), std::string::npos);
    EXPECT_EQ(b.files.at("cost_items.csv").substr(0, 39), "technology,item,kind,unit_cost,quantity");
}

TEST(BuildAggregate, SizesCells) {
    const auto b = rp::build_aggregate(cfg::from_json(json::object()));
    const auto& csv = b.files.at("aggregation.csv");
    EXPECT_NE(csv.find(",ceiling,842,"), std::string::npos) << csv;
}

TEST(Bundle, ResolvedConfigReproducesOutputs) {
    const auto c = cfg::from_json(json{{"seed", 9}, {"cost", {{"years", 2}}}});
    const auto a = rp::build_cost(c);
    const auto again = cfg::from_json(json::parse(a.files.at(rp::resolved_config_file)));
    const auto b = rp::build_cost(again);
    EXPECT_EQ(a.files, b.files);
}

TEST(Cli, EvaluateExitCodes) {
    const auto dir = scratch("eval");
    EXPECT_EQ(run_cli("evaluate -o " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "evaluate.csv"));
    EXPECT_TRUE(fs::exists(dir / "summary.txt"));
    EXPECT_TRUE(fs::exists(dir / "resolved_config.json"));
    EXPECT_EQ(run_cli("evaluate --set scenario=cloud_and_fog -o " + dir.string()), 2);
    EXPECT_EQ(run_cli("evaluate --set geometry.divergence_rad=-1 -o " + dir.string()), 1);
    EXPECT_EQ(run_cli("evaluate --config /nonexistent.cfg"), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST(Cli, ShippedReproductionConfigs) {
    const auto dir = scratch("configs");
    const std::string configs = VFSO_CONFIG_DIR;
    EXPECT_EQ(run_cli("sweep --config " + configs + "/weather_sweep.cfg -o " + (dir / "weather").string()), 0);
    EXPECT_EQ(run_cli("sweep --config " + configs + "/divergence_sweep.cfg -o " + (dir / "divergence").string()), 0);
    EXPECT_EQ(run_cli("cost --config " + configs + "/tco.cfg -o " + (dir / "tco").string()), 0);
    int weather = 0, divergence = 0;
    for (const auto& e : fs::directory_iterator(dir / "weather")) weather += e.path().filename().string().rfind("sweep_", 0) == 0;
    for (const auto& e : fs::directory_iterator(dir / "divergence")) divergence += e.path().filename().string().rfind("sweep_", 0) == 0;
    EXPECT_EQ(weather, 3);
    EXPECT_EQ(divergence, 3);
    EXPECT_TRUE(fs::exists(dir / "tco" / "cost_items.csv"));
    EXPECT_TRUE(fs::exists(dir / "tco" / "layout.csv"));

    // the echoed config reproduces the bundle byte for byte
    EXPECT_EQ(run_cli("cost --config " + (dir / "tco" / "resolved_config.json").string() + " -o " +
                      (dir / "tco_again").string()),
              0);
    for (const char* f : {"cost_items.csv", "cost_summary.csv", "layout.csv"})
        EXPECT_EQ(slurp(dir / "tco" / f), slurp(dir / "tco_again" / f)) << f;
}
