#pragma once

#include <cstdint>
#include <vector>

namespace sfgame::game {

enum class ChAction : std::uint8_t { Beacon, NoBeacon };
enum class CmAction : std::uint8_t { NoDrop, Drop };

struct ActionPair {
    ChAction ch = ChAction::Beacon;
    CmAction cm = CmAction::NoDrop;
};

/// Per-round utility parameters.
struct GameWeights {
    double alpha = 0.6;               ///< weight on the RSSI score
    double beta = 0.4;                ///< weight on the reliability level
    double energy_per_bit_j = 50e-9;  ///< eb
    int window_packets = 100;         ///< TP, packets per message window
    long packet_len_bits = 1024;      ///< L

    /// The punishment enters the utility scaled by this factor (default: the
    /// punishment is expressed in millijoules). Preserves every identity and
    /// ordering; only the reported magnitude changes.
    double punishment_gain = 1000.0;
};

/// What one CM delivered in one window. forwarded may exceed window_packets
/// when the sender over-transmits.
struct WindowOutcome {
    int forwarded = 0;
    int window_packets = 100;
};

/// Fraction of the window actually delivered. 1.0 for full delivery,
/// above 1.0 for over-transmission.
double reliability(const WindowOutcome& outcome);

/// Punishment components in joules. x1 charges the delivered share (the CM
/// transmitted without being granted the beacon), x2 the undelivered share
/// (drops under a granted beacon), x3 both.
struct Punishment {
    double x1_j = 0.0;
    double x2_j = 0.0;
    double x3_j = 0.0;
    double applied_j = 0.0;  ///< the component selected by the action pair
};

/// Computes x1/x2/x3 for a window and selects the component owed under the
/// action pair: x1 for (NB, ND), x2 for (B, D), x3 for (NB, D), 0 for (B, ND).
/// The components satisfy x1 + x2 == x3 == window_energy_j bit-for-bit.
Punishment punishment(ActionPair pair, const WindowOutcome& outcome, const GameWeights& weights);

/// Energy of a full window: TP * (L * eb).
double window_energy_j(const GameWeights& weights);

struct UtilityBreakdown {
    double rssi_term = 0.0;
    double rl_term = 0.0;
    double xi_scaled = 0.0;  ///< punishment_gain * xi_joules
    double total = 0.0;      ///< alpha*rssi + beta*rl - xi_scaled
};

UtilityBreakdown utility(double rssi, double rl, double xi_joules, const GameWeights& weights);

/// Average utility over all CMs and rounds: the defender's objective.
/// per_round_cm_utils holds one vector of per-CM utilities per round.
/// Throws std::domain_error on an empty history.
double data_trustworthiness(const std::vector<std::vector<double>>& per_round_cm_utils);

/// Action maximizing the CM's utility under the CH's announced policy.
/// Ties break toward NoDrop.
CmAction best_response_cm(double utility_no_drop, double utility_drop);

/// One player's payoff at the profile under test plus its payoffs under every
/// unilateral deviation available to it.
struct DeviationCheck {
    double current = 0.0;
    std::vector<double> alternatives;
};

/// True iff no single player's unilateral deviation strictly increases its
/// own payoff.
bool is_nash(const std::vector<DeviationCheck>& players);

/// True iff the candidate data trustworthiness weakly dominates every
/// alternative outcome.
bool is_pareto_optimal_dt(double dt_candidate, const std::vector<double>& dt_alternatives);

}  // namespace sfgame::game
