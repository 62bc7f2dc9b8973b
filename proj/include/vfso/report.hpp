#ifndef VFSO_REPORT_HPP
#define VFSO_REPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "vfso/aggregation.hpp"
#include "vfso/config.hpp"
#include "vfso/csv.hpp"
#include "vfso/hetnet_cost.hpp"
#include "vfso/link_budget.hpp"
#include "vfso/scenario.hpp"

// Report bundle generation behind the command-line subcommands. Every command
// writes its CSVs, a summary.txt, and resolved_config.json into the output
// directory.

namespace vfso::report {

enum ExitCode : int { success = 0, usage_error = 1, link_failure = 2 };

inline constexpr const char* resolved_config_file = "resolved_config.json";
inline constexpr const char* summary_file = "summary.txt";

// CSV renderers ------------------------------------------------------------

inline std::string evaluate_csv(const link_budget::LinkBudgetResult& r, const std::string& scenario_label,
                                const geometry::LinkGeometry& g) {
    csv::Writer w({"scenario", "nfp_altitude_m", "elevation_deg", "divergence_rad", "data_rate_bps",
                   "target_rate_bps", "link_margin_db", "link_viable", "received_power_w", "l_fog_db",
                   "l_rain_db", "l_cloud_db", "l_sci_db", "l_geo_db", "l_poi_db", "l_opt_db"});
    const auto& l = r.losses;
    w.field(scenario_label)
        .field(g.nfp_altitude_m)
        .field(rad_to_deg(g.elevation_rad))
        .field(g.divergence_rad)
        .field(r.data_rate_bps)
        .field(r.target_rate_bps)
        .field(r.link_margin_db)
        .field(r.link_viable)
        .field(r.received_power_w)
        .field(l.fog_db)
        .field(l.rain_db)
        .field(l.cloud_db)
        .field(l.scintillation_db)
        .field(l.geometrical_db)
        .field(l.pointing_db)
        .field(l.optical_db)
        .end_row();
    return w.str();
}

/// Fixed sweep schema. Rows that failed carry the message in `error` and
/// leave the numeric columns empty.
inline std::string sweep_csv(const scenario::SweepResult& s) {
    csv::Writer w({"variable", "data_rate_bps", "link_margin_db", "l_fog_db", "l_rain_db", "l_cloud_db",
                   "l_sci_db", "l_geo_db", "error"});
    for (const auto& row : s.rows) {
        w.field(row.value);
        if (row.ok()) {
            const auto& r = *row.result;
            w.field(r.data_rate_bps)
                .field(r.link_margin_db)
                .field(r.losses.fog_db)
                .field(r.losses.rain_db)
                .field(r.losses.cloud_db)
                .field(r.losses.scintillation_db)
                .field(r.losses.geometrical_db)
                .empty();
        } else {
            for (int i = 0; i < 7; ++i) w.empty();
            w.field(row.error);
        }
        w.end_row();
    }
    return w.str();
}

inline std::string cost_items_csv(const hetnet_cost::TcoComparison& c) {
    csv::Writer w({"technology", "item", "kind", "unit_cost", "quantity", "total"});
    for (const auto& r : c.results)
        for (const auto& li : r.line_items)
            w.field(hetnet_cost::to_string(li.technology))
                .field(li.item)
                .field(hetnet_cost::to_string(li.kind))
                .field(li.unit_cost)
                .field(li.quantity)
                .field(li.total)
                .end_row();
    return w.str();
}

inline std::string cost_summary_csv(const hetnet_cost::TcoComparison& c) {
    csv::Writer w({"rank", "technology", "capex", "opex_per_year", "years", "tco"});
    std::int64_t rank = 1;
    for (auto t : c.ranking) {
        const auto& r = c.at(t);
        w.field(rank++)
            .field(hetnet_cost::to_string(t))
            .field(r.capex)
            .field(r.opex_per_year)
            .field(c.years)
            .field(r.tco(c.years))
            .end_row();
    }
    return w.str();
}

inline std::string layout_csv(const hetnet_cost::HetNetLayout& layout) {
    csv::Writer w({"kind", "index", "x_m", "y_m"});
    auto emit = [&](const char* kind, const std::vector<hetnet_cost::Point>& pts) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            w.field(kind).field(static_cast<std::int64_t>(i)).field(pts[i].x_m).field(pts[i].y_m).end_row();
    };
    emit("macro", layout.macro_positions);
    emit("small", layout.small_positions);
    return w.str();
}

inline std::string aggregation_csv(const std::string& scenario_label, double link_rate_bps,
                                   const config::TrafficConfig& t, const aggregation::CellSizing& sizing,
                                   double demand_bps) {
    csv::Writer w({"scenario", "link_rate_bps", "busy_rate_bps", "peak_rate_bps", "rounding", "supported_cells",
                   "oversubscribed", "n_cells", "aggregated_demand_bps", "demand_within_link"});
    w.field(scenario_label)
        .field(link_rate_bps)
        .field(t.profile.busy_rate_bps)
        .field(t.profile.peak_rate_bps)
        .field(aggregation::to_string(t.rounding))
        .field(sizing.cells)
        .field(sizing.oversubscribed)
        .field(t.n_cells)
        .field(demand_bps)
        .field(demand_bps <= link_rate_bps)
        .end_row();
    return w.str();
}

// Bundle ---------------------------------------------------------------------

/// Named output files of one command, kept in memory until written.
struct ReportBundle {
    std::map<std::string, std::string> files;
    std::string summary;
    int exit_code = success;
};

inline std::string rate_string(double bps) {
    char buf[64];
    if (bps >= 1e9)
        std::snprintf(buf, sizeof buf, "%.3f Gbit/s", bps / 1e9);
    else if (bps >= 1e6)
        std::snprintf(buf, sizeof buf, "%.3f Mbit/s", bps / 1e6);
    else if (bps >= 1e3)
        std::snprintf(buf, sizeof buf, "%.3f kbit/s", bps / 1e3);
    else
        std::snprintf(buf, sizeof buf, "%.3f bit/s", bps);
    return buf;
}

inline std::string money_string(double usd) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "$%.3fM", usd / 1e6);
    return buf;
}

inline void add_config_echo(ReportBundle& b, const config::RunConfig& cfg) {
    b.files[resolved_config_file] = config::to_json(cfg).dump(2) + "\n";
}

inline ReportBundle build_evaluate(const config::RunConfig& cfg) {
    ReportBundle b;
    const auto weather = cfg.weather_for(cfg.scenario);
    const auto g = cfg.link_geometry();
    const auto r = link_budget::evaluate_link(cfg.transceiver, g, weather, cfg.target_rate_bps);
    b.files["evaluate.csv"] = evaluate_csv(r, weather.label, g);

    std::ostringstream s;
    char line[160];
    s << "Link evaluation: " << weather.label << ", h = " << g.nfp_altitude_m << " m, elevation "
      << cfg.geometry.elevation_deg << " deg, divergence " << g.divergence_rad << " rad\n";
    const auto& l = r.losses;
    for (auto [name, db] : {std::pair{"fog", l.fog_db}, std::pair{"rain", l.rain_db},
                            std::pair{"cloud", l.cloud_db}, std::pair{"scintillation", l.scintillation_db},
                            std::pair{"geometrical", l.geometrical_db}, std::pair{"pointing", l.pointing_db},
                            std::pair{"optical", l.optical_db}}) {
        std::snprintf(line, sizeof line, "  %-14s %10.3f dB\n", name, db);
        s << line;
    }
    std::snprintf(line, sizeof line, "  received power %10.4g W\n", r.received_power_w);
    s << line;
    s << "  data rate      " << rate_string(r.data_rate_bps) << "\n";
    std::snprintf(line, sizeof line, "  link margin    %10.3f dB (target %s)\n", r.link_margin_db,
                  rate_string(r.target_rate_bps).c_str());
    s << line;
    s << "  status         " << (r.link_viable ? "viable" : "LINK FAILURE") << "\n";
    b.summary = s.str();
    b.exit_code = r.link_viable ? success : link_failure;
    add_config_echo(b, cfg);
    return b;
}

inline ReportBundle build_sweep(const config::RunConfig& cfg) {
    ReportBundle b;
    std::ostringstream s;
    for (const auto& sw : cfg.sweeps) {
        const auto weather = cfg.weather_for(sw.scenario);
        const auto result =
            scenario::run_sweep(sw.spec, weather, cfg.transceiver, cfg.link_geometry(&sw), cfg.target_rate_bps);
        b.files["sweep_" + sw.name + ".csv"] = sweep_csv(result);

        std::size_t failed = 0;
        for (const auto& row : result.rows) failed += row.ok() ? 0 : 1;
        s << "sweep " << sw.name << " (" << weather.label << ", " << scenario::to_string(sw.spec.variable) << " "
          << sw.spec.start << " .. " << sw.spec.stop << ", " << sw.spec.points << " points): ";
        const auto& last = result.rows.back();
        if (last.ok())
            s << "rate at end " << rate_string(last.result->data_rate_bps) << ", margin "
              << csv::format_number(last.result->link_margin_db) << " dB";
        s << (failed ? ", " + std::to_string(failed) + " failed rows" : std::string()) << "\n";
    }
    b.summary = s.str();
    add_config_echo(b, cfg);
    return b;
}

inline ReportBundle build_cost(const config::RunConfig& cfg) {
    ReportBundle b;
    const auto layout = hetnet_cost::generate_layout(cfg.layout, cfg.seed);
    const auto cmp = hetnet_cost::compare_tco(layout, cfg.cost, cfg.years);
    b.files["cost_items.csv"] = cost_items_csv(cmp);
    b.files["cost_summary.csv"] = cost_summary_csv(cmp);
    b.files["layout.csv"] = layout_csv(layout);

    std::ostringstream s;
    s << "TCO over " << cfg.years << " year(s), " << cfg.layout.n_macro << " macro / " << cfg.layout.n_small
      << " small cells, seed " << cfg.seed << "\n";
    int rank = 1;
    char line[160];
    for (auto t : cmp.ranking) {
        const auto& r = cmp.at(t);
        std::snprintf(line, sizeof line, "  %d. %-16s capex %12s  opex/yr %12s  tco %12s\n", rank++,
                      std::string(hetnet_cost::to_string(t)).c_str(), money_string(r.capex).c_str(),
                      money_string(r.opex_per_year).c_str(), money_string(r.tco(cmp.years)).c_str());
        s << line;
    }
    b.summary = s.str();
    add_config_echo(b, cfg);
    return b;
}

inline ReportBundle build_aggregate(const config::RunConfig& cfg) {
    ReportBundle b;
    const auto weather = cfg.weather_for(cfg.scenario);
    const auto r = link_budget::evaluate_link(cfg.transceiver, cfg.link_geometry(), weather, cfg.target_rate_bps);
    const auto sizing = aggregation::supported_cells(r.data_rate_bps, cfg.traffic.profile, cfg.traffic.rounding);
    const double demand = aggregation::aggregated_demand(cfg.traffic.n_cells, cfg.traffic.profile);
    b.files["aggregation.csv"] = aggregation_csv(weather.label, r.data_rate_bps, cfg.traffic, sizing, demand);

    std::ostringstream s;
    s << "Aggregation sizing (" << weather.label << "): link rate " << rate_string(r.data_rate_bps) << "\n"
      << "  supported small cells (" << aggregation::to_string(cfg.traffic.rounding) << "): " << sizing.cells
      << (sizing.oversubscribed ? " (last cell partially served)" : "") << "\n"
      << "  demand of " << cfg.traffic.n_cells << " cells: " << rate_string(demand)
      << (demand <= r.data_rate_bps ? " (fits)" : " (exceeds link)") << "\n";
    b.summary = s.str();
    add_config_echo(b, cfg);
    return b;
}

inline void write_bundle(const ReportBundle& b, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    auto put = [&](const std::string& name, const std::string& body) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write '" + (dir / name).string() + "'");
        out << body;
    };
    for (const auto& [name, body] : b.files) put(name, body);
    put(summary_file, b.summary);
}

}  // namespace vfso::report

#endif
