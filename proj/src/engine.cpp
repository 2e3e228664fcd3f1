#include "sfgame/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "sfgame/errors.hpp"
#include "sfgame/radio.hpp"

namespace sfgame::engine {

int forgiveness_round(int cm_id, int n_cms) { return cm_id + cm_id * n_cms; }

std::vector<int> tdma_schedule(int n_cms, int rd) {
    (void)rd;  // the slot order is fixed; rounds only repeat it
    std::vector<int> slots(static_cast<std::size_t>(n_cms));
    std::iota(slots.begin(), slots.end(), 1);
    return slots;
}

game::ChAction beacon_policy(const CmState& cm, int rd, int n_cms) {
    if (cm.designation == Designation::Malicious) {
        if (rd == forgiveness_round(cm.id, n_cms) && !cm.forgiveness_passed)
            return game::ChAction::Beacon;  // forgiveness offer; judged on this window
        return game::ChAction::NoBeacon;
    }
    return game::ChAction::Beacon;
}

EnergyModel make_energy_model(const SimConfig& config) {
    EnergyModel m;
    m.packet_cost_j =
        radio::transmission_cost_j(config.profile, config.power_level, config.packet_len_bits);
    m.window_packets = config.window_packets;
    m.window_redo_j = static_cast<double>(config.window_packets) * m.packet_cost_j;
    const double window_airtime_s =
        static_cast<double>(config.window_packets) *
        (static_cast<double>(config.packet_len_bits) / config.profile.data_rate_bps);
    m.sleep_denial_j =
        config.profile.supply_volts * config.profile.radio_on_amps * window_airtime_s;
    return m;
}

game::WindowOutcome cm_transmit(CmState& cm, game::ChAction beacon, const EnergyModel& energy,
                                Rng& fault_rng, std::optional<game::CmAction> pinned_malicious_action) {
    const int tp = energy.window_packets;
    int sent = 0;
    int forwarded = 0;
    switch (cm.behavior.kind) {
        case BehaviorKind::Benevolent:
            sent = forwarded = tp;
            break;
        case BehaviorKind::RationalMalicious: {
            const game::CmAction action =
                pinned_malicious_action
                    ? *pinned_malicious_action
                    : (cm.attack_active ? game::CmAction::Drop : game::CmAction::NoDrop);
            sent = forwarded = (action == game::CmAction::Drop) ? 0 : tp;
            break;
        }
        case BehaviorKind::HwFaulty:
            if (cm.behavior.fault == FaultMode::DropFault)
                forwarded = fault_rng.binomial(tp, 1.0 - cm.behavior.p_drop);
            else
                forwarded = static_cast<int>(std::lround(tp * (1.0 + cm.behavior.over_gamma)));
            sent = forwarded;
            break;
    }

    double energy_delta = static_cast<double>(sent) * energy.packet_cost_j;
    double lost_delta = 0.0;
    if (beacon == game::ChAction::NoBeacon) {
        // Nothing is acknowledged: the window is resent once and sleep denied.
        energy_delta += energy.window_redo_j + energy.sleep_denial_j;
        lost_delta = energy.window_redo_j + energy.sleep_denial_j;
        cm.pending_retransmissions = tp;
    } else {
        const int undelivered = std::max(0, tp - std::min(forwarded, tp));
        lost_delta = static_cast<double>(undelivered) * energy.packet_cost_j;
        cm.pending_retransmissions = undelivered;
    }
    cm.energy_spent_j += energy_delta;
    cm.lost_power_j += lost_delta;

    game::WindowOutcome outcome;
    outcome.forwarded = forwarded;
    outcome.window_packets = tp;
    return outcome;
}

CmClass classify_cm(const std::vector<CmWindowObs>& history, int forgiveness_rd,
                    int equilibrium_round) {
    if (history.empty()) throw std::domain_error("classification needs at least one window");
    bool over = false;
    bool dropped = false;
    int last_drop_rd = -1;
    for (const auto& obs : history) {
        if (obs.forwarded > obs.window_packets) over = true;
        if (obs.forwarded < obs.window_packets) {
            dropped = true;
            last_drop_rd = std::max(last_drop_rd, obs.rd);
        }
    }
    if (over) return CmClass::HwFailure;
    if (!dropped) return CmClass::Benevolent;
    if (equilibrium_round < 0) return CmClass::Malicious;  // not yet distinguishable
    if (last_drop_rd >= forgiveness_rd || last_drop_rd > equilibrium_round)
        return CmClass::HwFailure;
    return CmClass::Malicious;
}

namespace {

struct Assignment {
    std::vector<CmBehavior> behaviors;
    std::vector<double> thetas;
};

bool contains(const std::vector<int>& ids, int id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<int> sample_distinct(std::vector<int> pool, int count, Rng& rng) {
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const auto j = static_cast<std::size_t>(k) + rng.below(pool.size() - static_cast<std::size_t>(k));
        std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
        picked.push_back(pool[static_cast<std::size_t>(k)]);
    }
    return picked;
}

Assignment assign_roles(const SimConfig& config, Rng& assign_rng) {
    const int n = config.n_cms;

    std::vector<int> malicious = config.malicious_ids;
    if (malicious.empty() && config.malicious_count > 0) {
        std::vector<int> pool;
        for (int id = 1; id <= n; ++id)
            if (!contains(config.hw_fault_ids, id)) pool.push_back(id);
        if (static_cast<int>(pool.size()) < config.malicious_count)
            throw ConfigError("malicious: not enough non-faulty CMs for " +
                              std::to_string(config.malicious_count) + " attackers");
        malicious = sample_distinct(std::move(pool), config.malicious_count, assign_rng);
    }
    for (std::size_t a = 0; a < malicious.size(); ++a)
        for (std::size_t b = a + 1; b < malicious.size(); ++b)
            if (malicious[a] == malicious[b])
                throw ConfigError("malicious: duplicate id " + std::to_string(malicious[a]));

    std::vector<int> faulty = config.hw_fault_ids;
    if (faulty.empty()) {
        const int fault_count = static_cast<int>(std::lround(config.hw_fault_fraction * n));
        if (fault_count > 0) {
            std::vector<int> pool;
            for (int id = 1; id <= n; ++id)
                if (!contains(malicious, id)) pool.push_back(id);
            if (static_cast<int>(pool.size()) < fault_count)
                throw ConfigError("hw_fault_fraction: not enough non-malicious CMs for " +
                                  std::to_string(fault_count) + " faults");
            faulty = sample_distinct(std::move(pool), fault_count, assign_rng);
        }
    }
    for (int id : faulty)
        if (contains(malicious, id))
            throw ConfigError("hw_fault_ids: id " + std::to_string(id) + " is also malicious");
    for (std::size_t a = 0; a < faulty.size(); ++a)
        for (std::size_t b = a + 1; b < faulty.size(); ++b)
            if (faulty[a] == faulty[b])
                throw ConfigError("hw_fault_ids: duplicate id " + std::to_string(faulty[a]));

    Assignment assignment;
    assignment.behaviors.assign(static_cast<std::size_t>(n), CmBehavior{});
    for (int id : malicious)
        assignment.behaviors[static_cast<std::size_t>(id - 1)].kind = BehaviorKind::RationalMalicious;
    int fault_idx = 0;
    for (int id : faulty) {
        auto& b = assignment.behaviors[static_cast<std::size_t>(id - 1)];
        b.kind = BehaviorKind::HwFaulty;
        b.fault = (fault_idx % 2 == 0) ? FaultMode::DropFault : FaultMode::OverTransmit;
        b.p_drop = config.p_drop;
        b.over_gamma = config.over_gamma;
        ++fault_idx;
    }
    assignment.thetas.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) assignment.thetas.push_back(assign_rng.uniform() * 360.0);
    return assignment;
}

}  // namespace

SimResult run_simulation(const SimConfig& config) {
    return run_simulation(config, PolicyOverride{}, "repeated");
}

SimResult run_simulation(const SimConfig& config, const PolicyOverride& policy,
                         const std::string& scenario_name) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const int n = config.n_cms;
    const int n_rounds = config.rounds();
    const auto& env = config.environment();
    const game::GameWeights weights = config.weights();
    const EnergyModel energy = make_energy_model(config);
    const double doi = config.doi();
    const double window_energy = game::window_energy_j(weights);

    Rng assign_rng(config.seed, stream::kAssignment);
    Rng shadow_rng(config.seed, stream::kShadowing);
    Rng direction_rng(config.seed, stream::kDirection);
    Rng fault_rng(config.seed, stream::kFault);

    const Assignment assignment = assign_roles(config, assign_rng);

    std::vector<CmState> cms(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& cm = cms[static_cast<std::size_t>(i)];
        cm.id = i + 1;
        cm.behavior = assignment.behaviors[static_cast<std::size_t>(i)];
        cm.theta_deg = assignment.thetas[static_cast<std::size_t>(i)];
        cm.attack_active = cm.behavior.kind == BehaviorKind::RationalMalicious;
    }

    SimResult result;
    result.config = config;
    result.scenario = scenario_name;
    result.rounds.reserve(static_cast<std::size_t>(n_rounds));

    double utility_total = 0.0;
    double optimum_total = 0.0;

    for (int rd = 1; rd <= n_rounds; ++rd) {
        RoundRecord record;
        record.rd = rd;
        record.cms.resize(static_cast<std::size_t>(n));

        for (int slot : tdma_schedule(n, rd)) {
            CmState& cm = cms[static_cast<std::size_t>(slot - 1)];

            if (config.redraw_theta) cm.theta_deg = direction_rng.uniform() * 360.0;
            const double shadow_draw = shadow_rng.normal(0.0, env.shadow_sigma_db);
            const double shadow_db =
                config.shadowing == ShadowingMode::Sampled ? shadow_draw : env.shadow_sigma_db;
            const double direction_draw = direction_rng.uniform_open();

            radio::LinkGeometry geom;
            geom.distance_m = config.distance_m;
            geom.theta_deg = cm.theta_deg;
            geom.doi = doi;
            geom.isotropic = config.isotropic;
            const double eta =
                radio::direction_coefficient(cm.theta_deg, doi, direction_draw, config.isotropic);
            const double pl = radio::path_loss_db(env, geom, config.profile, eta, shadow_db);
            const double rssi = radio::rssi_score(energy.packet_cost_j, pl, env.noise_power_dbm);

            const game::ChAction beacon =
                policy.ch_action ? *policy.ch_action : beacon_policy(cm, rd, n);
            if (beacon == game::ChAction::NoBeacon) {
                cm.ever_denied = true;
            } else if (cm.ever_denied && cm.beacon_restored_rd < 0) {
                cm.beacon_restored_rd = rd;
            }

            const double energy_before = cm.energy_spent_j;
            const double lost_before = cm.lost_power_j;
            const game::WindowOutcome outcome =
                cm_transmit(cm, beacon, energy, fault_rng, policy.malicious_action);
            const game::CmAction observed = outcome.forwarded < outcome.window_packets
                                                ? game::CmAction::Drop
                                                : game::CmAction::NoDrop;
            cm.last_action = observed;

            const double rl = game::reliability(outcome);
            const game::Punishment xi =
                game::punishment(game::ActionPair{beacon, observed}, outcome, weights);
            const game::UtilityBreakdown u = game::utility(rssi, rl, xi.applied_j, weights);
            const game::UtilityBreakdown u_opt = game::utility(rssi, 1.0, 0.0, weights);
            const game::UtilityBreakdown u_worst = game::utility(rssi, 0.0, window_energy, weights);

            auto& cell = record.cms[static_cast<std::size_t>(slot - 1)];
            cell.ch_action = beacon;
            cell.cm_action = observed;
            cell.forwarded = outcome.forwarded;
            cell.rl = rl;
            cell.xi_j = xi.applied_j;
            cell.utility = u.total;
            cell.rssi = rssi;
            cell.energy_delta_j = cm.energy_spent_j - energy_before;
            cell.lost_delta_j = cm.lost_power_j - lost_before;

            record.utility_sum += u.total;
            record.optimum_sum += u_opt.total;
            record.worst_sum += u_worst.total;
            result.pkt_delivered_total += outcome.forwarded;

            // A punished rational attacker has now experienced the full
            // (NB, D) window; it switches to compliance from the next round.
            if (!policy.malicious_action && cm.attack_active &&
                beacon == game::ChAction::NoBeacon && observed == game::CmAction::Drop)
                cm.attack_active = false;
        }

        if (policy.classify) {
            for (auto& cm : cms) {
                const auto& cell = record.cms[static_cast<std::size_t>(cm.id - 1)];
                const bool dropped = cell.forwarded < config.window_packets;
                const bool over = cell.forwarded > config.window_packets;

                if (cm.designation == Designation::Malicious &&
                    rd == forgiveness_round(cm.id, n) && !cm.forgiveness_passed) {
                    cm.forgiveness_passed = true;
                    cm.designation = dropped ? Designation::HwlCandidate : Designation::Benevolent;
                    continue;
                }
                if (cm.designation == Designation::HwlCandidate ||
                    cm.designation == Designation::HwListed)
                    continue;
                if (over) {
                    cm.designation = result.equilibrium_round >= 0 ? Designation::HwListed
                                                                   : Designation::HwlCandidate;
                    continue;
                }
                if (dropped && cm.designation == Designation::Benevolent) {
                    if (result.equilibrium_round >= 0)
                        cm.designation = Designation::HwListed;
                    else if (cm.forgiveness_passed)
                        cm.designation = Designation::HwlCandidate;  // relapse: not rational
                    else
                        cm.designation = Designation::Malicious;
                }
            }

            if (result.equilibrium_round < 0) {
                bool pending_malicious = false;
                bool all_cooperative = true;
                for (const auto& cm : cms) {
                    if (cm.designation == Designation::Malicious) pending_malicious = true;
                    if (cm.designation == Designation::Benevolent) {
                        const auto& cell = record.cms[static_cast<std::size_t>(cm.id - 1)];
                        if (cell.ch_action != game::ChAction::Beacon ||
                            cell.cm_action != game::CmAction::NoDrop)
                            all_cooperative = false;
                    }
                }
                if (!pending_malicious && all_cooperative) {
                    result.equilibrium_round = rd;
                    for (auto& cm : cms)
                        if (cm.designation == Designation::HwlCandidate)
                            cm.designation = Designation::HwListed;
                }
            }
        }

        utility_total += record.utility_sum;
        optimum_total += record.optimum_sum;
        record.dt_running = utility_total / static_cast<double>(rd);
        result.rounds.push_back(std::move(record));
    }

    // Run-end sweep: unresolved candidates are failures the cluster never
    // got to confirm in-band.
    for (auto& cm : cms)
        if (cm.designation == Designation::HwlCandidate) cm.designation = Designation::HwListed;

    result.dt = utility_total / static_cast<double>(n_rounds);
    result.dt_optimum = optimum_total / static_cast<double>(n_rounds);

    const int window_start = std::max(1, n_rounds - n + 1);
    for (int rd = window_start; rd <= n_rounds; ++rd)
        for (const auto& cell : result.rounds[static_cast<std::size_t>(rd - 1)].cms)
            result.pkt_delivered_eq_window += cell.forwarded;

    for (const auto& cm : cms) {
        CmSummary s;
        s.id = cm.id;
        s.behavior = cm.behavior;
        s.designation = cm.designation;
        s.theta_deg = cm.theta_deg;
        s.forgiveness_rd = forgiveness_round(cm.id, n);
        s.beacon_restored_rd = cm.beacon_restored_rd;
        s.energy_spent_j = cm.energy_spent_j;
        s.lost_power_j = cm.lost_power_j;
        result.cms.push_back(s);
        result.lost_power_total_j += cm.lost_power_j;
        if (cm.designation == Designation::HwListed) result.hwl.push_back(cm.id);
    }
    std::sort(result.hwl.begin(), result.hwl.end());

    result.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace sfgame::engine
