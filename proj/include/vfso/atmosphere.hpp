#ifndef VFSO_ATMOSPHERE_HPP
#define VFSO_ATMOSPHERE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vfso/core.hpp"
#include "vfso/geometry.hpp"

// Atmospheric attenuation along a ground-to-NFP slant path. Lengths are
// metres at the API and converted to km inside the scattering formulas;
// wavelengths are nm; every loss is returned in positive dB.

namespace vfso::atmosphere {

/// Meteorological visibility range.
struct Visibility {
    double km;

    explicit Visibility(double value_km) : km(value_km) {
        detail::require_positive(value_km, "visibility");
    }
    static Visibility from_metres(double m) { return Visibility(m / 1000.0); }
};

struct FogDescriptor {
    double visibility_km = 0.05;
    double layer_thickness_m = 50.0;

    void validate(const std::string& path = "fog") const {
        detail::check_positive(visibility_km, path + ".visibility");
        detail::check_non_negative(layer_thickness_m, path + ".layer_thickness_m");
    }
};

struct RainDescriptor {
    double rate_mm_per_h = 50.0;
    double layer_thickness_m = 1000.0;

    void validate(const std::string& path = "rain") const {
        detail::check_non_negative(rate_mm_per_h, path + ".rate_mm_per_h");
        detail::check_non_negative(layer_thickness_m, path + ".layer_thickness_m");
    }
};

struct CloudLayer {
    double base_altitude_m = 1000.0;
    double thickness_m = 48.0;
    double lwc_g_per_m3 = 1.0;
    double droplet_density_per_cm3 = 250.0;

    double top_altitude_m() const { return base_altitude_m + thickness_m; }

    void validate(const std::string& path = "cloud") const {
        detail::check_non_negative(base_altitude_m, path + ".base_altitude_m");
        detail::check_non_negative(thickness_m, path + ".thickness_m");
        detail::check_positive(lwc_g_per_m3, path + ".lwc_g_per_m3");
        detail::check_positive(droplet_density_per_cm3, path + ".droplet_density_per_cm3");
    }
};

/// Hufnagel-Valley inputs. When reference_altitude_m is unset, C_n^2 is taken
/// at the NFP altitude.
struct TurbulenceDescriptor {
    double wind_speed_mps = 21.0;
    double structure_constant_a = 1.7e-14;  // m^(-2/3)
    std::optional<double> reference_altitude_m;

    void validate(const std::string& path = "turbulence") const {
        detail::check_non_negative(wind_speed_mps, path + ".wind_speed_mps");
        detail::check_non_negative(structure_constant_a, path + ".structure_constant_a");
        if (reference_altitude_m)
            detail::check_non_negative(*reference_altitude_m, path + ".reference_altitude_m");
    }
};

/// The atmospheric state along the link. Fog and rain layers sit on the ground.
struct WeatherScenario {
    std::string label = "clear_sky";
    std::optional<FogDescriptor> fog;
    std::optional<RainDescriptor> rain;
    std::vector<CloudLayer> clouds;
    TurbulenceDescriptor turbulence;

    void validate() const;
};

/// Per-mechanism atmospheric losses, dB.
struct AtmosphericLoss {
    double fog_db = 0.0;
    double rain_db = 0.0;
    double cloud_db = 0.0;
    double scintillation_db = 0.0;

    double total_db() const { return rain_db + fog_db + cloud_db + scintillation_db; }
};

/// Particle size exponent of the Kruse model. The middle branch is closed on
/// both ends, so delta jumps from ~1.063 to 1.3 at V = 6 km.
inline double kruse_size_exponent(double visibility_km) {
    detail::require_positive(visibility_km, "visibility");
    if (visibility_km < 6.0) return 0.585 * std::cbrt(visibility_km);
    if (visibility_km <= 50.0) return 1.3;
    return 1.6;
}

/// Mie scattering attenuation per km (Kruse).
inline double mie_specific_attenuation(double visibility_km, double wavelength_nm) {
    detail::require_positive(wavelength_nm, "wavelength");
    const double delta = kruse_size_exponent(visibility_km);
    const double beta = (3.91 / visibility_km) * std::pow(wavelength_nm / 550.0, -delta);
    return 4.34 * beta;
}

inline double fog_attenuation(const FogDescriptor& fog, double elevation_rad, double wavelength_nm) {
    detail::require_elevation(elevation_rad);
    detail::require_non_negative(fog.layer_thickness_m, "fog layer thickness");
    const double specific = mie_specific_attenuation(fog.visibility_km, wavelength_nm);
    return specific * geometry::slant_length(fog.layer_thickness_m / 1000.0, elevation_rad);
}

inline double rain_attenuation(const RainDescriptor& rain, double elevation_rad) {
    detail::require_elevation(elevation_rad);
    detail::require_non_negative(rain.rate_mm_per_h, "rain rate");
    detail::require_non_negative(rain.layer_thickness_m, "rain layer thickness");
    const double specific = 1.076 * std::pow(rain.rate_mm_per_h, 0.67);
    return specific * geometry::slant_length(rain.layer_thickness_m / 1000.0, elevation_rad);
}

/// In-cloud visibility from liquid water content and droplet number density.
/// Both quantities reduce visibility; see the README for the chosen form.
inline double cloud_visibility(const CloudLayer& layer) {
    detail::require_positive(layer.lwc_g_per_m3, "liquid water content");
    detail::require_positive(layer.droplet_density_per_cm3, "droplet density");
    return 1.002 * std::pow(layer.lwc_g_per_m3 * layer.droplet_density_per_cm3, -0.6473);
}

/// Throws validation_error if any two layers overlap in altitude. Touching
/// layers (top == next base) are allowed.
inline void validate_cloud_profile(const std::vector<CloudLayer>& profile,
                                   const std::string& path = "clouds") {
    std::vector<const CloudLayer*> sorted;
    sorted.reserve(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
        profile[i].validate(path + "[" + std::to_string(i) + "]");
        sorted.push_back(&profile[i]);
    }
    std::sort(sorted.begin(), sorted.end(), [](const CloudLayer* a, const CloudLayer* b) {
        return a->base_altitude_m < b->base_altitude_m;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i - 1]->top_altitude_m() > sorted[i]->base_altitude_m)
            throw validation_error(path, "cloud layers overlap in altitude");
    }
}

/// Sums each layer's Mie loss over the part of the layer lying below the NFP.
inline double cloud_attenuation(const std::vector<CloudLayer>& profile, double nfp_altitude_m,
                                double elevation_rad, double wavelength_nm) {
    detail::require_elevation(elevation_rad);
    detail::require_positive(nfp_altitude_m, "NFP altitude");
    validate_cloud_profile(profile);

    double total = 0.0;
    for (const auto& layer : profile) {
        const double lo = std::max(layer.base_altitude_m, 0.0);
        const double hi = std::min(layer.top_altitude_m(), nfp_altitude_m);
        if (hi <= lo) continue;
        const double specific =
            mie_specific_attenuation(cloud_visibility(layer), wavelength_nm);
        total += specific * geometry::slant_length((hi - lo) / 1000.0, elevation_rad);
    }
    return total;
}

/// Hufnagel-Valley refractive-index structure parameter C_n^2(h), m^(-2/3).
inline double refractive_index_structure(double altitude_m, const TurbulenceDescriptor& turb) {
    detail::require_non_negative(altitude_m, "altitude");
    const double h = altitude_m;
    const double wind = turb.wind_speed_mps / 27.0;
    const double high = 0.00594 * wind * wind * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0);
    const double mid = 2.7e-16 * std::exp(-h / 1500.0);
    const double ground = turb.structure_constant_a * std::exp(-h / 100.0);
    return high + mid + ground;
}

/// Equivalent scintillation loss in dB for a path of the given length (m).
inline double scintillation_loss(double wavelength_nm, double cn2, double path_length_m) {
    detail::require_positive(wavelength_nm, "wavelength");
    detail::require_non_negative(cn2, "C_n^2");
    detail::require_positive(path_length_m, "path length");
    const double wavenumber = 2.0 * constants::pi / wavelength_nm * 1e9;  // 1/m
    const double variance =
        23.17 * std::pow(wavenumber, 7.0 / 6.0) * cn2 * std::pow(path_length_m, 11.0 / 6.0);
    return 2.0 * std::sqrt(variance);
}

inline void WeatherScenario::validate() const {
    if (label.empty()) throw validation_error("scenario.label", "must not be empty");
    if (fog) fog->validate();
    if (rain) rain->validate();
    validate_cloud_profile(clouds);
    turbulence.validate();
}

inline AtmosphericLoss total_atmospheric_loss(const WeatherScenario& scenario,
                                              const geometry::LinkGeometry& g,
                                              double wavelength_nm) {
    scenario.validate();
    g.validate();

    AtmosphericLoss loss;
    if (scenario.fog) loss.fog_db = fog_attenuation(*scenario.fog, g.elevation_rad, wavelength_nm);
    if (scenario.rain) loss.rain_db = rain_attenuation(*scenario.rain, g.elevation_rad);
    loss.cloud_db = cloud_attenuation(scenario.clouds, g.nfp_altitude_m, g.elevation_rad, wavelength_nm);

    const double ref_alt = scenario.turbulence.reference_altitude_m.value_or(g.nfp_altitude_m);
    const double cn2 = refractive_index_structure(ref_alt, scenario.turbulence);
    loss.scintillation_db = scintillation_loss(wavelength_nm, cn2, geometry::slant_path(g));
    return loss;
}

}  // namespace vfso::atmosphere

#endif
