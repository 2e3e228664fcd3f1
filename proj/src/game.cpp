#include "sfgame/game.hpp"

#include <stdexcept>

namespace sfgame::game {

double reliability(const WindowOutcome& outcome) {
    if (outcome.window_packets < 1) throw std::invalid_argument("window size must be at least 1");
    return static_cast<double>(outcome.forwarded) / static_cast<double>(outcome.window_packets);
}

double window_energy_j(const GameWeights& weights) {
    const double per_packet = static_cast<double>(weights.packet_len_bits) * weights.energy_per_bit_j;
    return static_cast<double>(weights.window_packets) * per_packet;
}

Punishment punishment(ActionPair pair, const WindowOutcome& outcome, const GameWeights& weights) {
    if (outcome.forwarded < 0) throw std::invalid_argument("forwarded count must be nonnegative");
    const double per_packet = static_cast<double>(weights.packet_len_bits) * weights.energy_per_bit_j;
    const double total = static_cast<double>(outcome.window_packets) * per_packet;

    Punishment p;
    // x2 complements the delivered share; re-deriving x1 from it makes
    // x1 + x2 == x3 == total hold bit-for-bit (Dekker's lemma, x1 <= total).
    p.x2_j = total - static_cast<double>(outcome.forwarded) * per_packet;
    p.x1_j = total - p.x2_j;
    p.x3_j = p.x1_j + p.x2_j;

    if (pair.ch == ChAction::NoBeacon && pair.cm == CmAction::NoDrop) p.applied_j = p.x1_j;
    else if (pair.ch == ChAction::Beacon && pair.cm == CmAction::Drop) p.applied_j = p.x2_j;
    else if (pair.ch == ChAction::NoBeacon && pair.cm == CmAction::Drop) p.applied_j = p.x3_j;
    else p.applied_j = 0.0;
    return p;
}

UtilityBreakdown utility(double rssi, double rl, double xi_joules, const GameWeights& weights) {
    UtilityBreakdown b;
    b.rssi_term = rssi;
    b.rl_term = rl;
    b.xi_scaled = weights.punishment_gain * xi_joules;
    b.total = weights.alpha * rssi + weights.beta * rl - b.xi_scaled;
    return b;
}

double data_trustworthiness(const std::vector<std::vector<double>>& per_round_cm_utils) {
    if (per_round_cm_utils.empty()) throw std::domain_error("utility history is empty");
    double sum = 0.0;
    for (const auto& round : per_round_cm_utils)
        for (double u : round) sum += u;
    return sum / static_cast<double>(per_round_cm_utils.size());
}

CmAction best_response_cm(double utility_no_drop, double utility_drop) {
    return utility_drop > utility_no_drop ? CmAction::Drop : CmAction::NoDrop;
}

bool is_nash(const std::vector<DeviationCheck>& players) {
    for (const auto& player : players)
        for (double alt : player.alternatives)
            if (alt > player.current) return false;
    return true;
}

bool is_pareto_optimal_dt(double dt_candidate, const std::vector<double>& dt_alternatives) {
    for (double alt : dt_alternatives)
        if (dt_candidate < alt) return false;
    return true;
}

}  // namespace sfgame::game
