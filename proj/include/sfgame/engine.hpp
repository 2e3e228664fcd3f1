#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfgame/config.hpp"
#include "sfgame/game.hpp"
#include "sfgame/rng.hpp"

namespace sfgame::engine {

enum class BehaviorKind : std::uint8_t { Benevolent, RationalMalicious, HwFaulty };
enum class FaultMode : std::uint8_t { None, DropFault, OverTransmit };

/// CH-side designation of one CM. HwlCandidate marks a CM that failed the
/// forgiveness test (or over-transmitted) and awaits confirmation into the
/// hardware-failure list once the cluster reaches equilibrium.
enum class Designation : std::uint8_t { Benevolent, Malicious, HwlCandidate, HwListed };

struct CmBehavior {
    BehaviorKind kind = BehaviorKind::Benevolent;
    FaultMode fault = FaultMode::None;
    double p_drop = 0.5;     ///< per-packet drop probability (DropFault)
    double over_gamma = 0.1; ///< excess transmission fraction (OverTransmit)
};

struct CmState {
    int id = 0;  ///< 1-based
    CmBehavior behavior{};
    Designation designation = Designation::Benevolent;
    bool attack_active = false;      ///< rational attacker still in its attack phase
    bool forgiveness_passed = false; ///< the one-time forgiveness round has gone by
    double theta_deg = 0.0;
    double energy_spent_j = 0.0;
    double lost_power_j = 0.0;
    int pending_retransmissions = 0;
    game::CmAction last_action = game::CmAction::NoDrop;  ///< observed in the last slot
    bool ever_denied = false;
    int beacon_restored_rd = -1;  ///< first Beacon round after a denial
};

/// Round number at which a punished CM is offered forgiveness: i + i*|N|.
int forgiveness_round(int cm_id, int n_cms);

/// Fixed slot order 1..n for every round.
std::vector<int> tdma_schedule(int n_cms, int rd);

/// Punish-and-forgive beacon rule. All CMs start with the beacon; a CM
/// designated malicious is denied it until its forgiveness round, where the
/// beacon is offered again (compliance is judged on that round's window).
/// Candidates and listed CMs keep the beacon: they are recorded, not punished.
game::ChAction beacon_policy(const CmState& cm, int rd, int n_cms);

/// Per-packet and per-round energy constants derived from the radio profile.
struct EnergyModel {
    double packet_cost_j = 0.0;       ///< transmission cost of one packet
    double window_redo_j = 0.0;       ///< retransmitting a full unacknowledged window
    double sleep_denial_j = 0.0;      ///< radio kept on for the window airtime
    int window_packets = 100;
};

EnergyModel make_energy_model(const SimConfig& config);

/// One CM's transmission for one round. Debits the CM's energy ledger and the
/// lost-power ledger; under NoBeacon the whole window goes unacknowledged, is
/// retransmitted once, and sleep is denied. pinned_malicious_action, when set,
/// freezes rational attackers to the given action (one-shot scenarios).
game::WindowOutcome cm_transmit(CmState& cm, game::ChAction beacon, const EnergyModel& energy,
                                Rng& fault_rng,
                                std::optional<game::CmAction> pinned_malicious_action = std::nullopt);

enum class CmClass : std::uint8_t { Benevolent, Malicious, HwFailure };

struct CmWindowObs {
    int rd = 0;
    int forwarded = 0;
    int window_packets = 100;
};

/// History-based classification of one CM. Over-transmission is never
/// strategic, so it always indicates a hardware failure; dropping that stops
/// by the forgiveness round is rational malice, dropping that persists is a
/// hardware failure once the cluster has equilibrated.
CmClass classify_cm(const std::vector<CmWindowObs>& history, int forgiveness_rd,
                    int equilibrium_round);

/// Scenario pinning used by the one-shot baselines. Unset fields leave the
/// repeated-game logic in charge.
struct PolicyOverride {
    std::optional<game::ChAction> ch_action;
    std::optional<game::CmAction> malicious_action;
    bool classify = true;  ///< designations, forgiveness and HWL bookkeeping
};

struct CmRound {
    game::ChAction ch_action = game::ChAction::Beacon;
    game::CmAction cm_action = game::CmAction::NoDrop;
    int forwarded = 0;
    double rl = 0.0;
    double xi_j = 0.0;      ///< unscaled punishment, joules
    double utility = 0.0;   ///< includes the punishment gain
    double rssi = 0.0;
    double energy_delta_j = 0.0;
    double lost_delta_j = 0.0;
};

struct RoundRecord {
    int rd = 0;
    std::vector<CmRound> cms;
    double utility_sum = 0.0;
    double optimum_sum = 0.0;  ///< all-(B, ND) utilities under the same draws
    double worst_sum = 0.0;    ///< all-(NB, D) utilities under the same draws
    double dt_running = 0.0;   ///< average utility per round up to this round
};

struct CmSummary {
    int id = 0;
    CmBehavior behavior{};
    Designation designation = Designation::Benevolent;
    double theta_deg = 0.0;
    int forgiveness_rd = 0;
    int beacon_restored_rd = -1;
    double energy_spent_j = 0.0;
    double lost_power_j = 0.0;
};

struct SimResult {
    SimConfig config{};
    std::string scenario;  ///< repeated, oneshot1, oneshot2, oneshot3, nodefense
    std::vector<RoundRecord> rounds;
    std::vector<CmSummary> cms;
    std::vector<int> hwl;            ///< sorted hardware-failure list at run end
    int equilibrium_round = -1;      ///< -1 when never reached / not tracked
    double dt = 0.0;                 ///< average per-round utility sum
    double dt_optimum = 0.0;
    long pkt_delivered_total = 0;
    long pkt_delivered_eq_window = 0;  ///< over the final |N| rounds
    double lost_power_total_j = 0.0;
    double wall_clock_seconds = 0.0;
};

/// Runs the repeated punish-and-forgive game.
SimResult run_simulation(const SimConfig& config);

/// Runs with pinned scenario behavior. Paired runs over the same config
/// consume identical random streams regardless of the override.
SimResult run_simulation(const SimConfig& config, const PolicyOverride& policy,
                         const std::string& scenario_name);

}  // namespace sfgame::engine
