#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfgame/game.hpp"
#include "sfgame/radio.hpp"

namespace sfgame {

enum class ShadowingMode : std::uint8_t {
    Sampled,  ///< per-CM per-round draw from Normal(0, sigma)
    Fixed,    ///< sigma added literally every round
};

/// Full description of one simulation run. Defaults reproduce the reference
/// parameter table: |N|=10, c=11, TP=100, L=1024, eb=50 nJ, alpha/beta 0.6/0.4,
/// h=31, d0=10 m, d_iCH=125 m, PL_f=55 dB, Tmote Sky electrical constants.
struct SimConfig {
    int n_cms = 10;
    double c_factor = 11.0;           ///< rounds = c_factor * n_cms; must exceed n_cms
    int window_packets = 100;         ///< TP
    long packet_len_bits = 1024;      ///< L
    double energy_per_bit_j = 50e-9;  ///< eb
    double alpha = 0.6;
    double beta = 0.4;

    std::string env_name = "UL";
    std::optional<double> env_n;         ///< override the environment's path-loss exponent
    std::optional<double> env_sigma_db;  ///< override its shadowing deviation
    std::optional<double> env_pn_dbm;    ///< override its noise power
    int doi_index = 1;                ///< 1-based index into the measured DOI set
    std::optional<double> doi_value;  ///< overrides doi_index when set
    bool isotropic = true;
    bool redraw_theta = false;        ///< redraw radiation angles every round

    double distance_m = 125.0;        ///< d_iCH
    int power_level = 31;             ///< h

    int malicious_count = 2;          ///< ids drawn by seed when malicious_ids is empty
    std::vector<int> malicious_ids;
    double hw_fault_fraction = 0.0;   ///< fraction of CMs with an injected HW fault
    std::vector<int> hw_fault_ids;    ///< pinned fault ids; overrides the fraction
    double p_drop = 0.5;              ///< drop-fault probability per packet
    double over_gamma = 0.1;          ///< over-transmission excess fraction

    ShadowingMode shadowing = ShadowingMode::Sampled;
    double punishment_gain = 1000.0;
    std::uint64_t seed = 1;

    radio::RadioProfile profile{};

    int rounds() const;
    double doi() const;

    /// The named environment with any per-field overrides applied.
    radio::EnvironmentParams environment() const;

    game::GameWeights weights() const;

    /// Validates every field; throws ConfigError naming each violated
    /// constraint. A config that passes is fully runnable.
    void validate() const;
};

/// Parses a flat key=value file ('#' starts a comment) over the defaults.
/// Unknown keys and malformed values are reported with the offending line.
/// The result is validated.
SimConfig load_config(const std::filesystem::path& path);

/// Same parser applied over an existing configuration; does not validate.
void apply_config_file(SimConfig& config, const std::filesystem::path& path);

/// Applies one key=value override (same keys as the config file). Used for
/// command-line flags, which win over file values. Does not validate.
void apply_override(SimConfig& config, std::string_view key, std::string_view value);

/// All recognized configuration keys, for diagnostics.
const std::vector<std::string>& config_keys();

}  // namespace sfgame
