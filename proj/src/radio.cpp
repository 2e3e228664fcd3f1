#include "sfgame/radio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sfgame/errors.hpp"

namespace sfgame::radio {

const std::array<EnvironmentParams, 6>& environments() {
    static const std::array<EnvironmentParams, 6> table = {{
        {"OL", 2.42, 3.12, -93.0},
        {"ON", 3.51, 2.95, -93.0},
        {"UL", 1.45, 2.45, -92.0},
        {"UN", 3.15, 3.19, -92.0},
        {"IL", 1.64, 3.29, -88.0},
        {"IN", 2.38, 2.25, -88.0},
    }};
    return table;
}

const EnvironmentParams& environment(std::string_view name) {
    for (const auto& env : environments())
        if (env.name == name) return env;
    throw ConfigError("unknown environment '" + std::string(name) +
                      "' (expected one of OL, ON, UL, UN, IL, IN)");
}

double RadioProfile::tx_current_amps(int level) const {
    for (const auto& [h, ma] : tx_current_ma)
        if (h == level) return ma * 1e-3;
    throw ConfigError("unknown transmission power level " + std::to_string(level));
}

double transmission_cost_j(const RadioProfile& profile, int level, long packet_len_bits) {
    if (packet_len_bits < 0) throw std::invalid_argument("packet length must be nonnegative");
    const double startup = profile.supply_volts * profile.radio_on_amps * profile.startup_seconds;
    const double amplification = profile.supply_volts * profile.tx_current_amps(level) *
                                 (static_cast<double>(packet_len_bits) / profile.data_rate_bps);
    return startup + amplification;
}

double direction_coefficient(double theta_deg, double doi, double random_draw, bool isotropic) {
    if (theta_deg < 0.0 || theta_deg >= 360.0)
        throw std::invalid_argument("radiation angle must lie in [0, 360)");
    if (isotropic || theta_deg == 0.0) return 1.0;
    if (!(random_draw > 0.0 && random_draw < 1.0))
        throw std::invalid_argument("direction draw must lie strictly inside (0, 1)");
    if (!(doi > 0.0)) throw std::invalid_argument("degree of irregularity must be positive");
    return std::min(1.0, random_draw * doi);
}

double path_loss_db(const EnvironmentParams& env, const LinkGeometry& geom,
                    const RadioProfile& profile, double eta, double shadow_db) {
    return nominal_path_loss_db(env, geom, profile, eta) + shadow_db;
}

double nominal_path_loss_db(const EnvironmentParams& env, const LinkGeometry& geom,
                            const RadioProfile& profile, double eta) {
    if (geom.distance_m < profile.far_field_ref_m)
        throw std::domain_error("link distance is inside the far-field reference distance");
    const double bracket = profile.free_space_ref_db +
                           10.0 * env.path_loss_exponent *
                               std::log10(geom.distance_m / profile.far_field_ref_m);
    return bracket * eta;
}

double energy_db(double joules) { return 10.0 * std::log10(joules / 1e-3); }

double rssi_score(double tc_joules, double pl_db, double pn_dbm) {
    if (!(tc_joules > 0.0)) throw std::invalid_argument("transmission cost must be positive");
    return energy_db(tc_joules) - pl_db - pn_dbm;
}

}  // namespace sfgame::radio
