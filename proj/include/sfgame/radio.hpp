#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace sfgame::radio {

/// Propagation constants of one measured deployment environment.
struct EnvironmentParams {
    std::string_view name;            ///< OL, ON, UL, UN, IL or IN
    double path_loss_exponent = 0.0;  ///< n
    double shadow_sigma_db = 0.0;     ///< standard deviation of the log-normal shadowing
    double noise_power_dbm = 0.0;     ///< Pn
};

/// The six built-in environments, in table order OL, ON, UL, UN, IL, IN.
const std::array<EnvironmentParams, 6>& environments();

/// Lookup by name; throws ConfigError for unknown names.
const EnvironmentParams& environment(std::string_view name);

/// Measured degree-of-irregularity values, selectable by 1-based index.
inline constexpr std::array<double, 6> kDoiValues = {0.0055, 0.0035, 0.004, 0.0045, 0.006, 0.0085};

/// Node electrical constants. Defaults model the Tmote Sky mote.
struct RadioProfile {
    double supply_volts = 3.0;        ///< V
    double radio_on_amps = 20e-6;     ///< I0, current with the radio on
    double startup_seconds = 580e-6;  ///< T0
    double data_rate_bps = 250e3;     ///< DR
    double free_space_ref_db = 55.0;  ///< PL_f at the far-field reference distance
    double far_field_ref_m = 10.0;    ///< d0

    /// Transmission power level h -> consumed current (mA), ascending in h.
    std::vector<std::pair<int, double>> tx_current_ma = {
        {3, 8.5}, {7, 9.9}, {11, 11.2}, {15, 12.5},
        {19, 13.9}, {23, 15.2}, {27, 16.5}, {31, 17.4},
    };

    /// Current in amperes for a power level; throws ConfigError for unknown levels.
    double tx_current_amps(int level) const;
};

/// One CM-to-CH link.
struct LinkGeometry {
    double distance_m = 125.0;  ///< d_iCH
    double theta_deg = 0.0;     ///< radiation angle, [0, 360)
    double doi = 0.0055;        ///< degree of irregularity
    bool isotropic = true;
};

/// Energy to transmit one packet: startup cost V*I0*T0 plus amplification
/// cost V*I_h*(L/DR). Throws ConfigError for unknown power levels.
double transmission_cost_j(const RadioProfile& profile, int level, long packet_len_bits);

/// Path loss direction coefficient. 1 for isotropic radiation or theta == 0,
/// otherwise random_draw * doi. random_draw must lie strictly inside (0, 1).
double direction_coefficient(double theta_deg, double doi, double random_draw, bool isotropic = false);

/// Log-distance path loss with direction coefficient and shadowing:
///   (PL_f + 10 n log10(d/d0)) * eta + shadow_db.
/// Throws std::domain_error when the distance is inside the far-field reference.
double path_loss_db(const EnvironmentParams& env, const LinkGeometry& geom,
                    const RadioProfile& profile, double eta, double shadow_db);

/// Transmission cost expressed in dB relative to 1 mJ.
double energy_db(double joules);

/// Dimensionless link score: energy_db(TC) - PL - Pn. Requires tc_joules > 0.
double rssi_score(double tc_joules, double pl_db, double pn_dbm);

/// Shadow-free path loss bracket (PL_f + 10 n log10(d/d0)) * eta; the value
/// path_loss_db produces with a zero shadow draw.
double nominal_path_loss_db(const EnvironmentParams& env, const LinkGeometry& geom,
                            const RadioProfile& profile, double eta);

}  // namespace sfgame::radio
