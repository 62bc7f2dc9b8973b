#ifndef VFSO_LINK_BUDGET_HPP
#define VFSO_LINK_BUDGET_HPP

#include <cmath>
#include <limits>

#include "vfso/atmosphere.hpp"
#include "vfso/core.hpp"
#include "vfso/geometry.hpp"

namespace vfso::link_budget {

/// Optical terminal parameters. The default efficiencies split a 2 dB optical
/// loss evenly between transmitter and receiver.
struct TransceiverParams {
    double transmit_power_w = 0.2;
    double tx_efficiency = 0.7943282347242815;  // 10^-0.1
    double rx_efficiency = 0.7943282347242815;
    double wavelength_nm = 1550.0;
    double pointing_loss_db = 2.0;
    double receiver_sensitivity = 100.0;  // photons per bit

    void validate() const {
        detail::check_positive(transmit_power_w, "transceiver.transmit_power_w");
        if (!(tx_efficiency > 0.0 && tx_efficiency <= 1.0))
            throw validation_error("transceiver.tx_efficiency", "must lie in (0, 1]");
        if (!(rx_efficiency > 0.0 && rx_efficiency <= 1.0))
            throw validation_error("transceiver.rx_efficiency", "must lie in (0, 1]");
        detail::check_positive(wavelength_nm, "transceiver.wavelength_nm");
        detail::check_non_negative(pointing_loss_db, "transceiver.pointing_loss_db");
        detail::check_positive(receiver_sensitivity, "transceiver.receiver_sensitivity");
    }
};

struct LossBreakdown {
    double fog_db = 0.0;
    double rain_db = 0.0;
    double cloud_db = 0.0;
    double scintillation_db = 0.0;
    double geometrical_db = 0.0;
    double pointing_db = 0.0;
    double optical_db = 0.0;

    double atmospheric_db() const { return rain_db + fog_db + cloud_db + scintillation_db; }
};

struct LinkBudgetResult {
    LossBreakdown losses;
    double received_power_w = 0.0;
    double data_rate_bps = 0.0;
    double target_rate_bps = 0.0;
    double link_margin_db = 0.0;
    bool link_viable = false;
};

inline constexpr double default_target_rate_bps = 3e9;

inline double optical_loss(double tx_efficiency, double rx_efficiency) {
    if (!(tx_efficiency > 0.0 && tx_efficiency <= 1.0) ||
        !(rx_efficiency > 0.0 && rx_efficiency <= 1.0))
        throw domain_error("optical efficiencies must lie in (0, 1]");
    const double product = tx_efficiency * rx_efficiency;
    return product >= 1.0 ? 0.0 : -to_db(product);
}

/// Energy of one photon, J.
inline double photon_energy(double wavelength_nm) {
    detail::require_positive(wavelength_nm, "wavelength");
    return constants::planck * constants::light_speed / (wavelength_nm * 1e-9);
}

inline double received_power(const TransceiverParams& tx, const geometry::LinkGeometry& g,
                             double atmospheric_loss_db) {
    tx.validate();
    const double capture = geometry::geometrical_capture_fraction(g);
    return tx.transmit_power_w * tx.tx_efficiency * tx.rx_efficiency *
           from_db(-tx.pointing_loss_db) * from_db(-atmospheric_loss_db) * capture;
}

/// 10 log10(rate / target). A zero rate yields -infinity.
inline double link_margin(double rate_bps, double target_rate_bps) {
    detail::require_non_negative(rate_bps, "rate");
    detail::require_positive(target_rate_bps, "target rate");
    if (rate_bps == 0.0) return -std::numeric_limits<double>::infinity();
    return to_db(rate_bps / target_rate_bps);
}

inline LinkBudgetResult evaluate_link(const TransceiverParams& tx, const geometry::LinkGeometry& g,
                                      const atmosphere::WeatherScenario& scenario,
                                      double target_rate_bps = default_target_rate_bps) {
    tx.validate();
    g.validate();
    const auto atm = atmosphere::total_atmospheric_loss(scenario, g, tx.wavelength_nm);

    LinkBudgetResult r;
    r.losses.fog_db = atm.fog_db;
    r.losses.rain_db = atm.rain_db;
    r.losses.cloud_db = atm.cloud_db;
    r.losses.scintillation_db = atm.scintillation_db;
    r.losses.geometrical_db = geometry::geometrical_loss(g);
    r.losses.pointing_db = tx.pointing_loss_db;
    r.losses.optical_db = optical_loss(tx.tx_efficiency, tx.rx_efficiency);

    r.received_power_w = received_power(tx, g, atm.total_db());
    r.data_rate_bps = r.received_power_w / (photon_energy(tx.wavelength_nm) * tx.receiver_sensitivity);
    r.target_rate_bps = target_rate_bps;
    r.link_margin_db = link_margin(r.data_rate_bps, target_rate_bps);
    r.link_viable = r.link_margin_db >= 0.0;
    return r;
}

inline double achievable_rate(const TransceiverParams& tx, const geometry::LinkGeometry& g,
                              const atmosphere::WeatherScenario& scenario) {
    return evaluate_link(tx, g, scenario).data_rate_bps;
}

}  // namespace vfso::link_budget

#endif
