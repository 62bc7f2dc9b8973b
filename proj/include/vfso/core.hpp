#ifndef VFSO_CORE_HPP
#define VFSO_CORE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vfso {

/// Raised when a model function is called outside its mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a parameter object violates one of its invariants. The
/// message always starts with the offending field name.
class validation_error : public std::invalid_argument {
public:
    validation_error(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised for malformed or unknown configuration entries.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double planck = 6.626e-34;      // J s
inline constexpr double light_speed = 3.0e8;     // m/s
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

inline constexpr double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

/// Linear power ratio -> dB.
inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }
/// dB -> linear power ratio.
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

namespace detail {

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw domain_error(std::string(name) + " must be positive and finite");
}

inline void require_non_negative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw domain_error(std::string(name) + " must be non-negative and finite");
}

inline void require_elevation(double elevation_rad) {
    if (!(elevation_rad > 0.0) || elevation_rad > constants::pi / 2.0 + 1e-12)
        throw domain_error("elevation must lie in (0, pi/2]");
}

inline void check_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw validation_error(field, "must be > 0");
}

inline void check_non_negative(double v, const std::string& field) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw validation_error(field, "must be >= 0");
}

}  // namespace detail
}  // namespace vfso

#endif
