#ifndef VFSO_GEOMETRY_HPP
#define VFSO_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

#include "vfso/core.hpp"

namespace vfso::geometry {

/// Ground terminal to NFP link. Flat-earth slant geometry, uniform-disc
/// beam footprint; divergence is the full cone angle.
struct LinkGeometry {
    double nfp_altitude_m = 20000.0;
    double elevation_rad = constants::pi / 4.0;
    double divergence_rad = 1e-3;
    double receiver_radius_m = 0.04;

    void validate() const {
        detail::check_positive(nfp_altitude_m, "geometry.nfp_altitude_m");
        if (!(elevation_rad > 0.0) || elevation_rad > constants::pi / 2.0 + 1e-12)
            throw validation_error("geometry.elevation", "must lie in (0, 90] degrees");
        detail::check_positive(divergence_rad, "geometry.divergence_rad");
        detail::check_positive(receiver_radius_m, "geometry.receiver_radius_m");
    }
};

/// Path length through a horizontal layer of the given vertical extent.
inline double slant_length(double vertical_m, double elevation_rad) {
    detail::require_elevation(elevation_rad);
    if (elevation_rad >= constants::pi / 2.0) return vertical_m;
    return vertical_m / std::sin(elevation_rad);
}

inline double slant_path(const LinkGeometry& g) {
    g.validate();
    return slant_length(g.nfp_altitude_m, g.elevation_rad);
}

inline double beam_radius(double divergence_rad, double path_length_m) {
    detail::require_positive(divergence_rad, "divergence");
    detail::require_positive(path_length_m, "path length");
    return divergence_rad * path_length_m / 2.0;
}

/// Fraction of transmitted power landing on the receiver aperture, capped at
/// 1 when the footprint is smaller than the aperture.
inline double geometrical_capture_fraction(const LinkGeometry& g) {
    const double rb = beam_radius(g.divergence_rad, slant_path(g));
    const double ratio = g.receiver_radius_m / rb;
    return std::min(1.0, ratio * ratio);
}

inline double geometrical_loss(const LinkGeometry& g) {
    const double capture = geometrical_capture_fraction(g);
    return capture >= 1.0 ? 0.0 : -to_db(capture);
}

}  // namespace vfso::geometry

#endif
