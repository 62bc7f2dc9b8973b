#ifndef VFSO_HETNET_COST_HPP
#define VFSO_HETNET_COST_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfso/core.hpp"

// Techno-economic comparison of small-cell backhaul options over a randomly
// deployed HetNet. All money is USD; OPEX is per year.

namespace vfso::hetnet_cost {

struct Point {
    double x_m = 0.0;
    double y_m = 0.0;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m); }

struct Area {
    double width_m = 5000.0;
    double height_m = 5000.0;
};

struct LayoutParams {
    std::int64_t n_macro = 100;
    std::int64_t n_small = 1000;
    Area area;

    void validate(const std::string& path = "layout") const {
        if (n_macro < 1) throw validation_error(path + ".n_macro", "must be >= 1");
        if (n_small < 1) throw validation_error(path + ".n_small", "must be >= 1");
        vfso::detail::check_positive(area.width_m, path + ".width_m");
        vfso::detail::check_positive(area.height_m, path + ".height_m");
    }
};

struct HetNetLayout {
    Area area;
    std::vector<Point> macro_positions;
    std::vector<Point> small_positions;
    std::uint64_t rng_seed = 0;
};

/// Uniform i.i.d. placement over the area, i.e. a Poisson process conditioned
/// on the number of points. Macros are drawn first, then small cells.
inline HetNetLayout generate_layout(std::int64_t n_macro, std::int64_t n_small, const Area& area,
                                    std::uint64_t seed) {
    LayoutParams{n_macro, n_small, area}.validate();
    HetNetLayout layout{area, {}, {}, seed};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, area.width_m);
    std::uniform_real_distribution<double> uy(0.0, area.height_m);
    auto draw = [&](std::int64_t n, std::vector<Point>& out) {
        out.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            const double x = ux(rng);
            const double y = uy(rng);
            out.push_back({x, y});
        }
    };
    draw(n_macro, layout.macro_positions);
    draw(n_small, layout.small_positions);
    return layout;
}

inline HetNetLayout generate_layout(const LayoutParams& p, std::uint64_t seed) {
    return generate_layout(p.n_macro, p.n_small, p.area, seed);
}

/// Distance from every small cell to its closest macro site.
inline std::vector<double> nearest_macro_distances(const HetNetLayout& layout) {
    if (layout.macro_positions.empty()) throw domain_error("layout has no macro cells");
    std::vector<double> d;
    d.reserve(layout.small_positions.size());
    for (const auto& s : layout.small_positions) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : layout.macro_positions) best = std::min(best, distance(s, m));
        d.push_back(best);
    }
    return d;
}

enum class Technology { rf_nlos_ptm, fiber, terrestrial_fso, vertical_fso };

inline constexpr std::array<Technology, 4> all_technologies = {
    Technology::rf_nlos_ptm, Technology::fiber, Technology::terrestrial_fso, Technology::vertical_fso};

inline std::string_view to_string(Technology t) {
    switch (t) {
        case Technology::rf_nlos_ptm: return "rf_nlos_ptm";
        case Technology::fiber: return "fiber";
        case Technology::terrestrial_fso: return "terrestrial_fso";
        case Technology::vertical_fso: return "vertical_fso";
    }
    return "?";
}

enum class CostKind { capex, opex };

inline std::string_view to_string(CostKind k) { return k == CostKind::capex ? "capex" : "opex"; }

struct LineItem {
    Technology technology;
    std::string item;
    CostKind kind;
    double unit_cost = 0.0;
    double quantity = 0.0;
    double total = 0.0;
};

struct TcoResult {
    Technology technology;
    double capex = 0.0;
    double opex_per_year = 0.0;
    std::vector<LineItem> line_items;

    double tco(double years) const { return capex + years * opex_per_year; }
};

namespace detail {

class TcoBuilder {
public:
    explicit TcoBuilder(Technology t) { result_.technology = t; }

    TcoBuilder& add(CostKind kind, std::string item, double unit_cost, double quantity) {
        LineItem li{result_.technology, std::move(item), kind, unit_cost, quantity, unit_cost * quantity};
        (kind == CostKind::capex ? result_.capex : result_.opex_per_year) += li.total;
        result_.line_items.push_back(std::move(li));
        return *this;
    }

    TcoResult build() { return std::move(result_); }

private:
    TcoResult result_;
};

inline void check_cost(double v, const std::string& field) { vfso::detail::check_non_negative(v, field); }

}  // namespace detail

/// RF non-line-of-sight point-to-multipoint: one hub serves up to
/// `modules_per_hub` remote modules. Pole lease and power/maintenance are
/// charged per deployed device site (hubs and modules).
struct RfNlosParams {
    double modules_per_hub = 4.0;
    double hub_cost = 4000.0;
    double hub_install = 270.0;
    double module_cost = 2000.0;
    double module_install = 140.0;
    double spectrum_mhz = 40.0;
    double spectrum_per_mhz_per_capita = 0.007;
    double population = 250000.0;
    double pole_lease_per_year = 1250.0;
    double power_maintenance_per_year = 375.0;

    void validate(const std::string& p = "cost.rf_nlos") const {
        vfso::detail::check_positive(modules_per_hub, p + ".modules_per_hub");
        for (auto [v, n] : std::initializer_list<std::pair<double, const char*>>{
                 {hub_cost, "hub_cost"},
                 {hub_install, "hub_install"},
                 {module_cost, "module_cost"},
                 {module_install, "module_install"},
                 {spectrum_mhz, "spectrum_mhz"},
                 {spectrum_per_mhz_per_capita, "spectrum_per_mhz_per_capita"},
                 {population, "population"},
                 {pole_lease_per_year, "pole_lease_per_year"},
                 {power_maintenance_per_year, "power_maintenance_per_year"}})
            detail::check_cost(v, p + "." + n);
    }
};

/// Fiber trenched from each small cell to its nearest macro hub.
struct FiberParams {
    double cable_per_m = 10.0;
    double install_per_m = 200.0;
    double maintenance_per_link_per_year = 200.0;
    double routing_factor = 1.0;

    void validate(const std::string& p = "cost.fiber") const {
        detail::check_cost(cable_per_m, p + ".cable_per_m");
        detail::check_cost(install_per_m, p + ".install_per_m");
        detail::check_cost(maintenance_per_link_per_year, p + ".maintenance_per_link_per_year");
        if (!(routing_factor >= 1.0) || !std::isfinite(routing_factor))
            throw validation_error(p + ".routing_factor", "must be >= 1");
    }
};

/// Terrestrial FSO: cells without line of sight to the hub need a multi-hop
/// relay chain.
struct TerrestrialFsoParams {
    double nlos_fraction = 0.5;
    std::int64_t nlos_hops = 2;
    double equipment_per_link = 15000.0;
    double install_per_link = 5000.0;
    double maintenance_per_link_per_year = 8000.0;

    void validate(const std::string& p = "cost.terrestrial_fso") const {
        if (!(nlos_fraction >= 0.0 && nlos_fraction <= 1.0))
            throw validation_error(p + ".nlos_fraction", "must lie in [0, 1]");
        if (nlos_hops < 1) throw validation_error(p + ".nlos_hops", "must be >= 1");
        detail::check_cost(equipment_per_link, p + ".equipment_per_link");
        detail::check_cost(install_per_link, p + ".install_per_link");
        detail::check_cost(maintenance_per_link_per_year, p + ".maintenance_per_link_per_year");
    }
};

/// Vertical FSO through NFPs. The default flight hours (~79% duty cycle)
/// correspond to a one-year TCO near $120M; 8760 h is round-the-clock.
struct VerticalFsoParams {
    std::int64_t platforms = 20;
    double platform_cost = 50000.0;
    double cost_per_flight_hour = 859.0;
    double flight_hours_per_year = 6925.0;

    void validate(const std::string& p = "cost.vertical_fso") const {
        if (platforms < 0) throw validation_error(p + ".platforms", "must be >= 0");
        detail::check_cost(platform_cost, p + ".platform_cost");
        detail::check_cost(cost_per_flight_hour, p + ".cost_per_flight_hour");
        if (!(flight_hours_per_year >= 0.0 && flight_hours_per_year <= 8760.0))
            throw validation_error(p + ".flight_hours_per_year", "must lie in [0, 8760]");
    }
};

struct CostParameters {
    RfNlosParams rf_nlos;
    FiberParams fiber;
    TerrestrialFsoParams terrestrial_fso;
    VerticalFsoParams vertical_fso;

    void validate() const {
        rf_nlos.validate();
        fiber.validate();
        terrestrial_fso.validate();
        vertical_fso.validate();
    }
};

inline TcoResult cost_rf_nlos(const HetNetLayout& layout, const RfNlosParams& p) {
    p.validate();
    const double modules = static_cast<double>(layout.small_positions.size());
    const double hubs = std::ceil(modules / p.modules_per_hub);
    return detail::TcoBuilder(Technology::rf_nlos_ptm)
        .add(CostKind::capex, "hub equipment", p.hub_cost, hubs)
        .add(CostKind::capex, "hub installation", p.hub_install, hubs)
        .add(CostKind::capex, "remote module equipment", p.module_cost, modules)
        .add(CostKind::capex, "remote module installation", p.module_install, modules)
        .add(CostKind::opex, "spectrum license (USD/MHz/capita)",
             p.spectrum_per_mhz_per_capita, p.spectrum_mhz * p.population)
        .add(CostKind::opex, "pole lease", p.pole_lease_per_year, hubs + modules)
        .add(CostKind::opex, "power and maintenance", p.power_maintenance_per_year, hubs + modules)
        .build();
}

inline TcoResult cost_fiber(const HetNetLayout& layout, const FiberParams& p) {
    p.validate();
    const auto d = nearest_macro_distances(layout);
    const double metres = std::accumulate(d.begin(), d.end(), 0.0) * p.routing_factor;
    const double links = static_cast<double>(d.size());
    return detail::TcoBuilder(Technology::fiber)
        .add(CostKind::capex, "fiber cable (per m)", p.cable_per_m, metres)
        .add(CostKind::capex, "trenching and installation (per m)", p.install_per_m, metres)
        .add(CostKind::opex, "power and maintenance (per link)", p.maintenance_per_link_per_year, links)
        .build();
}

/// Indices of the small cells without line of sight to their hub: an exact
/// round(fraction * n) subset, drawn from a stream derived from the layout seed.
inline std::vector<std::size_t> select_nlos_cells(const HetNetLayout& layout, double nlos_fraction) {
    const std::size_t n = layout.small_positions.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(layout.rng_seed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto k = static_cast<std::size_t>(std::llround(nlos_fraction * static_cast<double>(n)));
    idx.resize(std::min(k, n));
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline TcoResult cost_terrestrial_fso(const HetNetLayout& layout, const TerrestrialFsoParams& p) {
    p.validate();
    const double n = static_cast<double>(layout.small_positions.size());
    const double nlos = static_cast<double>(select_nlos_cells(layout, p.nlos_fraction).size());
    const double links = (n - nlos) + static_cast<double>(p.nlos_hops) * nlos;
    return detail::TcoBuilder(Technology::terrestrial_fso)
        .add(CostKind::capex, "FSO equipment (per link)", p.equipment_per_link, links)
        .add(CostKind::capex, "planning and installation (per link)", p.install_per_link, links)
        .add(CostKind::opex, "power and maintenance (per link)", p.maintenance_per_link_per_year, links)
        .build();
}

inline TcoResult cost_vertical_fso(const HetNetLayout& /*layout*/, const VerticalFsoParams& p) {
    p.validate();
    const double platforms = static_cast<double>(p.platforms);
    return detail::TcoBuilder(Technology::vertical_fso)
        .add(CostKind::capex, "flying platform", p.platform_cost, platforms)
        .add(CostKind::opex, "platform operation (per flight-hour)", p.cost_per_flight_hour,
             platforms * p.flight_hours_per_year)
        .build();
}

struct TcoComparison {
    double years = 1.0;
    std::vector<TcoResult> results;   // in all_technologies order
    std::vector<Technology> ranking;  // cheapest first

    const TcoResult& at(Technology t) const { return results[static_cast<std::size_t>(t)]; }
};

inline TcoComparison compare_tco(const HetNetLayout& layout, const CostParameters& params, double years) {
    if (!(years >= 0.0) || !std::isfinite(years)) throw domain_error("years must be >= 0");
    params.validate();
    TcoComparison c;
    c.years = years;
    c.results = {cost_rf_nlos(layout, params.rf_nlos), cost_fiber(layout, params.fiber),
                 cost_terrestrial_fso(layout, params.terrestrial_fso),
                 cost_vertical_fso(layout, params.vertical_fso)};
    c.ranking.assign(all_technologies.begin(), all_technologies.end());
    std::stable_sort(c.ranking.begin(), c.ranking.end(), [&](Technology a, Technology b) {
        return c.at(a).tco(years) < c.at(b).tco(years);
    });
    return c;
}

}  // namespace vfso::hetnet_cost

#endif
