#ifndef VFSO_AGGREGATION_HPP
#define VFSO_AGGREGATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "vfso/core.hpp"

namespace vfso::aggregation {

/// Per-small-cell backhaul traffic figures, bit/s.
struct TrafficProfile {
    double busy_rate_bps = 50e6;
    double peak_rate_bps = 300e6;

    void validate(const std::string& path = "traffic") const {
        detail::check_positive(busy_rate_bps, path + ".busy_rate_bps");
        if (!(peak_rate_bps >= busy_rate_bps) || !std::isfinite(peak_rate_bps))
            throw validation_error(path + ".peak_rate_bps", "must be >= busy_rate_bps");
    }
};

enum class Rounding { ceiling, floor };

inline std::string_view to_string(Rounding r) { return r == Rounding::ceiling ? "ceiling" : "floor"; }

inline Rounding parse_rounding(std::string_view s) {
    if (s == "ceiling") return Rounding::ceiling;
    if (s == "floor") return Rounding::floor;
    throw config_error("unknown rounding mode '" + std::string(s) + "'");
}

/// Backhaul demand of n small cells: max(n * busy, peak).
inline double aggregated_demand(std::int64_t n_cells, const TrafficProfile& profile) {
    if (n_cells < 1) throw domain_error("cell count must be >= 1");
    profile.validate();
    return std::max(static_cast<double>(n_cells) * profile.busy_rate_bps, profile.peak_rate_bps);
}

struct CellSizing {
    std::int64_t cells = 0;
    /// Set when cells * busy_rate exceeds the link rate (ceiling rounding
    /// admits a partially served cell).
    bool oversubscribed = false;
};

inline CellSizing supported_cells(double link_rate_bps, const TrafficProfile& profile,
                                  Rounding rounding = Rounding::ceiling) {
    detail::require_non_negative(link_rate_bps, "link rate");
    profile.validate();
    const double ratio = link_rate_bps / profile.busy_rate_bps;
    const double n = rounding == Rounding::ceiling ? std::ceil(ratio) : std::floor(ratio);
    CellSizing s;
    s.cells = static_cast<std::int64_t>(n);
    s.oversubscribed = n * profile.busy_rate_bps > link_rate_bps;
    return s;
}

}  // namespace vfso::aggregation

#endif
