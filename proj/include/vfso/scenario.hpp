#ifndef VFSO_SCENARIO_HPP
#define VFSO_SCENARIO_HPP

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfso/atmosphere.hpp"
#include "vfso/core.hpp"
#include "vfso/geometry.hpp"
#include "vfso/link_budget.hpp"

namespace vfso::scenario {

using atmosphere::CloudLayer;
using atmosphere::FogDescriptor;
using atmosphere::RainDescriptor;
using atmosphere::TurbulenceDescriptor;
using atmosphere::WeatherScenario;

/// Baseline simulation parameters (200 mW, 1 mrad, 45 deg, 4 cm aperture,
/// 1550 nm, 21 m/s wind, 100 photons/bit).
struct DefaultParameters {
    link_budget::TransceiverParams transceiver;
    geometry::LinkGeometry geometry;
    TurbulenceDescriptor turbulence;
    double min_altitude_m = 1000.0;
    double max_altitude_m = 20000.0;
};

inline DefaultParameters default_parameters() { return {}; }

/// Single Cumulus layer. LWC and droplet density are the documented Cumulus
/// values; the 48 m thickness gives ~34 dB at 45 deg and 1550 nm.
inline std::vector<CloudLayer> default_cloud_profile() { return {CloudLayer{}}; }

/// Weather building blocks that presets are assembled from. Every field can
/// be overridden from the run configuration.
struct WeatherComponents {
    FogDescriptor fog;                   // 50 m visibility, 50 m layer
    RainDescriptor rain;                 // 50 mm/h, 1000 m layer
    std::vector<CloudLayer> clouds = default_cloud_profile();
    TurbulenceDescriptor turbulence;
};

enum class Preset { clear_sky, fog_dense, heavy_rain, cloud_and_fog, rain_and_cloud };

inline constexpr std::array<std::string_view, 5> preset_names = {
    "clear_sky", "fog_dense", "heavy_rain", "cloud_and_fog", "rain_and_cloud"};

inline std::string_view to_string(Preset p) { return preset_names[static_cast<std::size_t>(p)]; }

inline Preset parse_preset(std::string_view name) {
    for (std::size_t i = 0; i < preset_names.size(); ++i)
        if (preset_names[i] == name) return static_cast<Preset>(i);
    throw config_error("unknown weather preset '" + std::string(name) + "'");
}

inline WeatherScenario preset(Preset p, const WeatherComponents& parts = {}) {
    WeatherScenario s;
    s.label = std::string(to_string(p));
    s.turbulence = parts.turbulence;
    switch (p) {
        case Preset::clear_sky:
            break;
        case Preset::fog_dense:
            s.fog = parts.fog;
            break;
        case Preset::heavy_rain:
            s.rain = parts.rain;
            break;
        case Preset::cloud_and_fog:
            s.fog = parts.fog;
            s.clouds = parts.clouds;
            break;
        case Preset::rain_and_cloud:
            s.rain = parts.rain;
            s.clouds = parts.clouds;
            break;
    }
    s.validate();
    return s;
}

inline WeatherScenario preset(std::string_view name, const WeatherComponents& parts = {}) {
    return preset(parse_preset(name), parts);
}

enum class SweepVariable { altitude, divergence };
enum class SweepScale { linear, log };

inline std::string_view to_string(SweepVariable v) {
    return v == SweepVariable::altitude ? "altitude" : "divergence";
}
inline std::string_view to_string(SweepScale s) { return s == SweepScale::linear ? "linear" : "log"; }

inline SweepVariable parse_sweep_variable(std::string_view s) {
    if (s == "altitude") return SweepVariable::altitude;
    if (s == "divergence") return SweepVariable::divergence;
    throw config_error("unknown sweep variable '" + std::string(s) + "'");
}

inline SweepScale parse_sweep_scale(std::string_view s) {
    if (s == "linear") return SweepScale::linear;
    if (s == "log") return SweepScale::log;
    throw config_error("unknown sweep scale '" + std::string(s) + "'");
}

/// Altitude values are metres, divergence values radians. Endpoints inclusive.
struct SweepSpec {
    SweepVariable variable = SweepVariable::altitude;
    double start = 1000.0;
    double stop = 20000.0;
    int points = 40;
    SweepScale scale = SweepScale::linear;

    void validate(const std::string& path = "sweep") const {
        if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
            throw validation_error(path + ".start", "start must be finite and < stop");
        if (points < 2) throw validation_error(path + ".points", "must be >= 2");
        if (scale == SweepScale::log && !(start > 0.0))
            throw validation_error(path + ".start", "log scale requires start > 0");
    }

    std::vector<double> grid() const {
        validate();
        std::vector<double> g(static_cast<std::size_t>(points));
        const double n = points - 1;
        for (int i = 0; i < points; ++i) {
            const double t = i / n;
            if (scale == SweepScale::linear)
                g[i] = start + t * (stop - start);
            else
                g[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
        }
        g.front() = start;
        g.back() = stop;
        return g;
    }
};

struct SweepRow {
    double value = 0.0;
    std::optional<link_budget::LinkBudgetResult> result;
    std::string error;  // empty when result is set

    bool ok() const { return result.has_value(); }
};

struct SweepResult {
    SweepSpec spec;
    std::string scenario_label;
    std::vector<SweepRow> rows;
};

/// Evaluates the link at every grid point with all other parameters held
/// fixed. A failing point is recorded on its row and the sweep continues.
inline SweepResult run_sweep(const SweepSpec& spec, const WeatherScenario& weather,
                             const link_budget::TransceiverParams& tx,
                             const geometry::LinkGeometry& base,
                             double target_rate_bps = link_budget::default_target_rate_bps) {
    SweepResult out{spec, weather.label, {}};
    const auto grid = spec.grid();
    out.rows.reserve(grid.size());
    for (double v : grid) {
        SweepRow row;
        row.value = v;
        auto g = base;
        if (spec.variable == SweepVariable::altitude)
            g.nfp_altitude_m = v;
        else
            g.divergence_rad = v;
        try {
            row.result = link_budget::evaluate_link(tx, g, weather, target_rate_bps);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace vfso::scenario

#endif
