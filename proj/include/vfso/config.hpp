#ifndef VFSO_CONFIG_HPP
#define VFSO_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfso/aggregation.hpp"
#include "vfso/atmosphere.hpp"
#include "vfso/core.hpp"
#include "vfso/geometry.hpp"
#include "vfso/hetnet_cost.hpp"
#include "vfso/link_budget.hpp"
#include "vfso/scenario.hpp"

// Run configuration: a JSON document whose keys carry their units. Every key
// is optional; omitted keys take the baseline simulation defaults and unknown
// keys are rejected with their full path.

namespace vfso::config {

using json = nlohmann::json;

struct GeometryConfig {
    double nfp_altitude_m = 20000.0;
    double elevation_deg = 45.0;
    double divergence_rad = 1e-3;
    double receiver_radius_m = 0.04;

    geometry::LinkGeometry link() const {
        return {nfp_altitude_m, deg_to_rad(elevation_deg), divergence_rad, receiver_radius_m};
    }
};

struct FogConfig {
    double visibility_m = 50.0;
    double layer_thickness_m = 50.0;
};

struct WeatherConfig {
    FogConfig fog;
    atmosphere::RainDescriptor rain;
    std::vector<atmosphere::CloudLayer> clouds = scenario::default_cloud_profile();
    atmosphere::TurbulenceDescriptor turbulence;

    scenario::WeatherComponents components() const {
        scenario::WeatherComponents c;
        c.fog = {fog.visibility_m / 1000.0, fog.layer_thickness_m};
        c.rain = rain;
        c.clouds = clouds;
        c.turbulence = turbulence;
        return c;
    }
};

/// One sweep: a grid over `variable`, evaluated for one weather preset. The
/// optional fields override the run geometry for this sweep only.
struct SweepConfig {
    std::string name;
    std::string scenario = "clear_sky";
    scenario::SweepSpec spec;
    std::optional<double> divergence_rad;
    std::optional<double> nfp_altitude_m;
};

struct TrafficConfig {
    aggregation::TrafficProfile profile;
    std::int64_t n_cells = 10;
    aggregation::Rounding rounding = aggregation::Rounding::ceiling;
};

struct RunConfig {
    link_budget::TransceiverParams transceiver;
    GeometryConfig geometry;
    WeatherConfig weather;
    std::string scenario = "clear_sky";
    double target_rate_bps = link_budget::default_target_rate_bps;
    std::vector<SweepConfig> sweeps;
    TrafficConfig traffic;
    hetnet_cost::LayoutParams layout;
    hetnet_cost::CostParameters cost;
    double years = 1.0;
    std::uint64_t seed = 1;
    std::string output_dir;

    scenario::WeatherScenario weather_for(const std::string& preset_name) const {
        return scenario::preset(preset_name, weather.components());
    }

    geometry::LinkGeometry link_geometry(const SweepConfig* sweep = nullptr) const {
        auto g = geometry.link();
        if (sweep) {
            if (sweep->divergence_rad) g.divergence_rad = *sweep->divergence_rad;
            if (sweep->nfp_altitude_m) g.nfp_altitude_m = *sweep->nfp_altitude_m;
        }
        return g;
    }

    void validate() const;
};

/// Altitude sweeps over 1-20 km for clear sky, heavy rain, and cloud + fog.
inline std::vector<SweepConfig> default_sweeps() {
    std::vector<SweepConfig> s;
    for (const char* name : {"clear_sky", "heavy_rain", "cloud_and_fog"}) {
        SweepConfig c;
        c.name = name;
        c.scenario = name;
        s.push_back(c);
    }
    return s;
}

namespace detail {

/// Reads the members of one JSON object, remembering which keys were used so
/// leftovers can be reported.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw config_error(where() + ": expected an object");
    }

    template <typename T>
    void get(const char* key, T& dst) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) return;
        try {
            dst = it->template get<T>();
        } catch (const json::exception& e) {
            throw config_error(child(key) + ": wrong type (" + e.what() + ")");
        }
    }

    template <typename T>
    void get(const char* key, std::optional<T>& dst) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) return;
        try {
            dst = it->template get<T>();
        } catch (const json::exception& e) {
            throw config_error(child(key) + ": wrong type (" + e.what() + ")");
        }
    }

    /// Returns the sub-document for `key`, or null when absent.
    const json* sub(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw config_error(child(it.key()) + ": unknown key");
    }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string where() const { return path_.empty() ? "<root>" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

inline void read_transceiver(const json& j, const std::string& path, link_budget::TransceiverParams& t) {
    ObjectReader r(j, path);
    r.get("transmit_power_w", t.transmit_power_w);
    r.get("tx_efficiency", t.tx_efficiency);
    r.get("rx_efficiency", t.rx_efficiency);
    r.get("wavelength_nm", t.wavelength_nm);
    r.get("pointing_loss_db", t.pointing_loss_db);
    r.get("receiver_sensitivity_photons_per_bit", t.receiver_sensitivity);
    r.finish();
}

inline void read_geometry(const json& j, const std::string& path, GeometryConfig& g) {
    ObjectReader r(j, path);
    r.get("nfp_altitude_m", g.nfp_altitude_m);
    r.get("elevation_deg", g.elevation_deg);
    r.get("divergence_rad", g.divergence_rad);
    r.get("receiver_radius_m", g.receiver_radius_m);
    r.finish();
}

inline void read_cloud(const json& j, const std::string& path, atmosphere::CloudLayer& c) {
    ObjectReader r(j, path);
    r.get("base_altitude_m", c.base_altitude_m);
    r.get("thickness_m", c.thickness_m);
    r.get("lwc_g_per_m3", c.lwc_g_per_m3);
    r.get("droplet_density_per_cm3", c.droplet_density_per_cm3);
    r.finish();
}

inline void read_weather(const json& j, const std::string& path, WeatherConfig& w) {
    ObjectReader r(j, path);
    if (auto* f = r.sub("fog")) {
        ObjectReader fr(*f, r.child("fog"));
        fr.get("visibility_m", w.fog.visibility_m);
        fr.get("layer_thickness_m", w.fog.layer_thickness_m);
        fr.finish();
    }
    if (auto* rn = r.sub("rain")) {
        ObjectReader rr(*rn, r.child("rain"));
        rr.get("rate_mm_per_h", w.rain.rate_mm_per_h);
        rr.get("layer_thickness_m", w.rain.layer_thickness_m);
        rr.finish();
    }
    if (auto* c = r.sub("clouds")) {
        if (!c->is_array()) throw config_error(r.child("clouds") + ": expected an array");
        w.clouds.clear();
        for (std::size_t i = 0; i < c->size(); ++i) {
            atmosphere::CloudLayer layer;
            read_cloud((*c)[i], r.child("clouds") + "." + std::to_string(i), layer);
            w.clouds.push_back(layer);
        }
    }
    if (auto* t = r.sub("turbulence")) {
        ObjectReader tr(*t, r.child("turbulence"));
        tr.get("wind_speed_mps", w.turbulence.wind_speed_mps);
        tr.get("structure_constant_a", w.turbulence.structure_constant_a);
        tr.get("reference_altitude_m", w.turbulence.reference_altitude_m);
        tr.finish();
    }
    r.finish();
}

inline void read_sweep(const json& j, const std::string& path, SweepConfig& s) {
    ObjectReader r(j, path);
    r.get("name", s.name);
    r.get("scenario", s.scenario);
    std::string variable(scenario::to_string(s.spec.variable));
    std::string scale(scenario::to_string(s.spec.scale));
    r.get("variable", variable);
    r.get("scale", scale);
    try {
        s.spec.variable = scenario::parse_sweep_variable(variable);
        s.spec.scale = scenario::parse_sweep_scale(scale);
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
    if (s.spec.variable == scenario::SweepVariable::divergence) {
        s.spec.start = 1e-6;
        s.spec.stop = 1e-3;
    }
    r.get("start", s.spec.start);
    r.get("stop", s.spec.stop);
    r.get("points", s.spec.points);
    r.get("divergence_rad", s.divergence_rad);
    r.get("nfp_altitude_m", s.nfp_altitude_m);
    r.finish();
    if (s.name.empty()) s.name = s.scenario;
}

inline void read_cost(const json& j, const std::string& path, hetnet_cost::CostParameters& c) {
    ObjectReader r(j, path);
    if (auto* p = r.sub("rf_nlos")) {
        ObjectReader o(*p, r.child("rf_nlos"));
        auto& x = c.rf_nlos;
        o.get("modules_per_hub", x.modules_per_hub);
        o.get("hub_cost", x.hub_cost);
        o.get("hub_install", x.hub_install);
        o.get("module_cost", x.module_cost);
        o.get("module_install", x.module_install);
        o.get("spectrum_mhz", x.spectrum_mhz);
        o.get("spectrum_per_mhz_per_capita", x.spectrum_per_mhz_per_capita);
        o.get("population", x.population);
        o.get("pole_lease_per_year", x.pole_lease_per_year);
        o.get("power_maintenance_per_year", x.power_maintenance_per_year);
        o.finish();
    }
    if (auto* p = r.sub("fiber")) {
        ObjectReader o(*p, r.child("fiber"));
        auto& x = c.fiber;
        o.get("cable_per_m", x.cable_per_m);
        o.get("install_per_m", x.install_per_m);
        o.get("maintenance_per_link_per_year", x.maintenance_per_link_per_year);
        o.get("routing_factor", x.routing_factor);
        o.finish();
    }
    if (auto* p = r.sub("terrestrial_fso")) {
        ObjectReader o(*p, r.child("terrestrial_fso"));
        auto& x = c.terrestrial_fso;
        o.get("nlos_fraction", x.nlos_fraction);
        o.get("nlos_hops", x.nlos_hops);
        o.get("equipment_per_link", x.equipment_per_link);
        o.get("install_per_link", x.install_per_link);
        o.get("maintenance_per_link_per_year", x.maintenance_per_link_per_year);
        o.finish();
    }
    if (auto* p = r.sub("vertical_fso")) {
        ObjectReader o(*p, r.child("vertical_fso"));
        auto& x = c.vertical_fso;
        o.get("platforms", x.platforms);
        o.get("platform_cost", x.platform_cost);
        o.get("cost_per_flight_hour", x.cost_per_flight_hour);
        o.get("flight_hours_per_year", x.flight_hours_per_year);
        o.finish();
    }
    r.finish();
}

}  // namespace detail

inline void RunConfig::validate() const {
    transceiver.validate();
    link_geometry().validate();
    const auto parts = weather.components();
    parts.fog.validate("weather.fog");
    parts.rain.validate("weather.rain");
    atmosphere::validate_cloud_profile(parts.clouds, "weather.clouds");
    parts.turbulence.validate("weather.turbulence");
    try {
        scenario::parse_preset(scenario);
    } catch (const config_error& e) {
        throw validation_error("scenario", e.what());
    }
    vfso::detail::check_positive(target_rate_bps, "target_rate_bps");
    std::set<std::string> names;
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
        const auto& s = sweeps[i];
        const std::string p = "sweeps." + std::to_string(i);
        s.spec.validate(p);
        try {
            scenario::parse_preset(s.scenario);
        } catch (const config_error& e) {
            throw validation_error(p + ".scenario", e.what());
        }
        if (s.name.find_first_of("/\\") != std::string::npos)
            throw validation_error(p + ".name", "must not contain path separators");
        if (!names.insert(s.name).second) throw validation_error(p + ".name", "duplicate sweep name");
        link_geometry(&s).validate();
    }
    traffic.profile.validate("traffic");
    if (traffic.n_cells < 1) throw validation_error("traffic.n_cells", "must be >= 1");
    layout.validate();
    cost.validate();
    if (!(years >= 0.0) || !std::isfinite(years)) throw validation_error("cost.years", "must be >= 0");
}

/// Builds a validated configuration from a parsed document.
inline RunConfig from_json(const json& doc) {
    RunConfig c;
    c.sweeps = default_sweeps();
    detail::ObjectReader r(doc, "");
    if (auto* p = r.sub("transceiver")) detail::read_transceiver(*p, "transceiver", c.transceiver);
    if (auto* p = r.sub("geometry")) detail::read_geometry(*p, "geometry", c.geometry);
    if (auto* p = r.sub("weather")) detail::read_weather(*p, "weather", c.weather);
    r.get("scenario", c.scenario);
    r.get("target_rate_bps", c.target_rate_bps);
    if (auto* p = r.sub("sweeps")) {
        if (!p->is_array()) throw config_error("sweeps: expected an array");
        c.sweeps.clear();
        for (std::size_t i = 0; i < p->size(); ++i) {
            SweepConfig s;
            detail::read_sweep((*p)[i], "sweeps." + std::to_string(i), s);
            c.sweeps.push_back(s);
        }
    }
    if (auto* p = r.sub("traffic")) {
        detail::ObjectReader t(*p, "traffic");
        t.get("busy_rate_bps", c.traffic.profile.busy_rate_bps);
        t.get("peak_rate_bps", c.traffic.profile.peak_rate_bps);
        t.get("n_cells", c.traffic.n_cells);
        std::string rounding(aggregation::to_string(c.traffic.rounding));
        t.get("rounding", rounding);
        try {
            c.traffic.rounding = aggregation::parse_rounding(rounding);
        } catch (const config_error& e) {
            throw config_error(std::string("traffic.rounding: ") + e.what());
        }
        t.finish();
    }
    if (auto* p = r.sub("layout")) {
        detail::ObjectReader l(*p, "layout");
        l.get("n_macro", c.layout.n_macro);
        l.get("n_small", c.layout.n_small);
        l.get("width_m", c.layout.area.width_m);
        l.get("height_m", c.layout.area.height_m);
        l.finish();
    }
    if (auto* p = r.sub("cost")) {
        json rest = *p;
        if (rest.is_object() && rest.contains("years")) {
            try {
                if (!rest["years"].is_null()) c.years = rest["years"].get<double>();
            } catch (const json::exception&) {
                throw config_error("cost.years: wrong type");
            }
            rest.erase("years");
        }
        detail::read_cost(rest, "cost", c.cost);
    }
    r.get("seed", c.seed);
    r.get("output_dir", c.output_dir);
    r.finish();
    c.validate();
    return c;
}

inline json parse_document(const std::string& text, const std::string& origin = "<config>") {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
    try {
        return json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw config_error(origin + ": parse error: " + e.what());
    }
}

inline json read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

/// Applies a `dotted.key=value` override. The value is parsed as JSON when
/// possible and kept as a string otherwise. Numeric path segments index arrays.
inline void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override '" + assignment + "' is not of the form key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &doc;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string seg = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (seg.empty()) throw config_error("override key '" + key + "' has an empty segment");
        json* next = nullptr;
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(seg);
            } catch (const std::exception&) {
                throw config_error("override key '" + key + "': '" + seg + "' is not an array index");
            }
            if (idx >= node->size()) throw config_error("override key '" + key + "': index out of range");
            next = &(*node)[idx];
        } else {
            if (node->is_null()) *node = json::object();
            if (!node->is_object()) throw config_error("override key '" + key + "' descends into a scalar");
            next = &(*node)[seg];
        }
        node = next;
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    *node = std::move(value);
}

inline RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {}) {
    json doc = path.empty() ? json::object() : read_document(path);
    for (const auto& o : overrides) apply_override(doc, o);
    return from_json(doc);
}

/// The fully resolved configuration. Feeding it back through from_json
/// yields an identical RunConfig.
inline json to_json(const RunConfig& c) {
    json j;
    const auto& t = c.transceiver;
    j["transceiver"] = {{"transmit_power_w", t.transmit_power_w},
                        {"tx_efficiency", t.tx_efficiency},
                        {"rx_efficiency", t.rx_efficiency},
                        {"wavelength_nm", t.wavelength_nm},
                        {"pointing_loss_db", t.pointing_loss_db},
                        {"receiver_sensitivity_photons_per_bit", t.receiver_sensitivity}};
    j["geometry"] = {{"nfp_altitude_m", c.geometry.nfp_altitude_m},
                     {"elevation_deg", c.geometry.elevation_deg},
                     {"divergence_rad", c.geometry.divergence_rad},
                     {"receiver_radius_m", c.geometry.receiver_radius_m}};
    json clouds = json::array();
    for (const auto& l : c.weather.clouds)
        clouds.push_back({{"base_altitude_m", l.base_altitude_m},
                          {"thickness_m", l.thickness_m},
                          {"lwc_g_per_m3", l.lwc_g_per_m3},
                          {"droplet_density_per_cm3", l.droplet_density_per_cm3}});
    const auto& tb = c.weather.turbulence;
    j["weather"] = {
        {"fog", {{"visibility_m", c.weather.fog.visibility_m}, {"layer_thickness_m", c.weather.fog.layer_thickness_m}}},
        {"rain", {{"rate_mm_per_h", c.weather.rain.rate_mm_per_h}, {"layer_thickness_m", c.weather.rain.layer_thickness_m}}},
        {"clouds", clouds},
        {"turbulence",
         {{"wind_speed_mps", tb.wind_speed_mps},
          {"structure_constant_a", tb.structure_constant_a},
          {"reference_altitude_m", tb.reference_altitude_m ? json(*tb.reference_altitude_m) : json(nullptr)}}}};
    j["scenario"] = c.scenario;
    j["target_rate_bps"] = c.target_rate_bps;
    json sweeps = json::array();
    for (const auto& s : c.sweeps) {
        json sj = {{"name", s.name},
                   {"scenario", s.scenario},
                   {"variable", std::string(scenario::to_string(s.spec.variable))},
                   {"start", s.spec.start},
                   {"stop", s.spec.stop},
                   {"points", s.spec.points},
                   {"scale", std::string(scenario::to_string(s.spec.scale))}};
        sj["divergence_rad"] = s.divergence_rad ? json(*s.divergence_rad) : json(nullptr);
        sj["nfp_altitude_m"] = s.nfp_altitude_m ? json(*s.nfp_altitude_m) : json(nullptr);
        sweeps.push_back(std::move(sj));
    }
    j["sweeps"] = sweeps;
    j["traffic"] = {{"busy_rate_bps", c.traffic.profile.busy_rate_bps},
                    {"peak_rate_bps", c.traffic.profile.peak_rate_bps},
                    {"n_cells", c.traffic.n_cells},
                    {"rounding", std::string(aggregation::to_string(c.traffic.rounding))}};
    j["layout"] = {{"n_macro", c.layout.n_macro},
                   {"n_small", c.layout.n_small},
                   {"width_m", c.layout.area.width_m},
                   {"height_m", c.layout.area.height_m}};
    const auto& rf = c.cost.rf_nlos;
    const auto& fb = c.cost.fiber;
    const auto& tf = c.cost.terrestrial_fso;
    const auto& vf = c.cost.vertical_fso;
    j["cost"] = {
        {"years", c.years},
        {"rf_nlos",
         {{"modules_per_hub", rf.modules_per_hub},
          {"hub_cost", rf.hub_cost},
          {"hub_install", rf.hub_install},
          {"module_cost", rf.module_cost},
          {"module_install", rf.module_install},
          {"spectrum_mhz", rf.spectrum_mhz},
          {"spectrum_per_mhz_per_capita", rf.spectrum_per_mhz_per_capita},
          {"population", rf.population},
          {"pole_lease_per_year", rf.pole_lease_per_year},
          {"power_maintenance_per_year", rf.power_maintenance_per_year}}},
        {"fiber",
         {{"cable_per_m", fb.cable_per_m},
          {"install_per_m", fb.install_per_m},
          {"maintenance_per_link_per_year", fb.maintenance_per_link_per_year},
          {"routing_factor", fb.routing_factor}}},
        {"terrestrial_fso",
         {{"nlos_fraction", tf.nlos_fraction},
          {"nlos_hops", tf.nlos_hops},
          {"equipment_per_link", tf.equipment_per_link},
          {"install_per_link", tf.install_per_link},
          {"maintenance_per_link_per_year", tf.maintenance_per_link_per_year}}},
        {"vertical_fso",
         {{"platforms", vf.platforms},
          {"platform_cost", vf.platform_cost},
          {"cost_per_flight_hour", vf.cost_per_flight_hour},
          {"flight_hours_per_year", vf.flight_hours_per_year}}}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j;
}

}  // namespace vfso::config

#endif
