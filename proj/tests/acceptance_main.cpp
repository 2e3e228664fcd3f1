// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sfgame/engine.hpp"
#include "sfgame/game.hpp"
#include "sfgame/metrics.hpp"
#include "sfgame/rng.hpp"
#include "sfgame/scenarios.hpp"

using namespace sfgame;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& description) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, description.c_str());
    if (!pass) ++g_failures;
}

SimConfig attack_config(std::uint64_t seed, int attackers, double fault_fraction) {
    SimConfig config;
    config.seed = seed;
    config.malicious_count = attackers;
    config.hw_fault_fraction = fault_fraction;
    return config;
}

double mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

// ---- criterion 1: forgiveness schedule -------------------------------------

void criterion_forgiveness() {
    bool pass = true;
    std::string detail;
    for (int attacker = 1; attacker <= 10 && pass; ++attacker) {
        SimConfig config = attack_config(1000 + static_cast<std::uint64_t>(attacker), 0, 0.0);
        config.malicious_ids = {attacker};
        config.malicious_count = 1;
        const auto result = engine::run_simulation(config);
        const int expected = attacker + attacker * 10;

        if (result.cms[static_cast<std::size_t>(attacker - 1)].beacon_restored_rd != expected) {
            pass = false;
            detail = "CM " + std::to_string(attacker) + " restored at rd " +
                     std::to_string(result.cms[static_cast<std::size_t>(attacker - 1)].beacon_restored_rd) +
                     ", expected " + std::to_string(expected);
            break;
        }
        for (int rd = 2; rd < expected; ++rd)
            if (result.rounds[static_cast<std::size_t>(rd - 1)]
                    .cms[static_cast<std::size_t>(attacker - 1)]
                    .ch_action != game::ChAction::NoBeacon) {
                pass = false;
                detail = "beacon not withheld at rd " + std::to_string(rd);
                break;
            }
    }
    report(1, pass,
           "beacon restored exactly at rd = i + i*|N| for every attacker id (CM 3 -> 33)" +
               (detail.empty() ? "" : " [" + detail + "]"));
}

// ---- criterion 2: punishment identities ------------------------------------

void criterion_punishment_identity() {
    Rng rng(20260808, 0);
    bool pass = true;
    for (int trial = 0; trial < 1000 && pass; ++trial) {
        game::GameWeights w;
        w.window_packets = 1 + static_cast<int>(rng.below(10000));
        w.packet_len_bits = 1 + static_cast<long>(rng.below(65536));
        w.energy_per_bit_j = 1e-10 + rng.uniform() * 1e-5;
        const int fwd = static_cast<int>(rng.below(static_cast<std::uint64_t>(w.window_packets) + 1));
        const auto p = game::punishment({game::ChAction::NoBeacon, game::CmAction::Drop},
                                        {fwd, w.window_packets}, w);
        const double expected_total =
            static_cast<double>(w.window_packets) *
            (static_cast<double>(w.packet_len_bits) * w.energy_per_bit_j);
        if (p.x3_j != p.x1_j + p.x2_j) pass = false;
        if (p.x1_j + p.x2_j != expected_total) pass = false;
    }
    report(2, pass, "x3 = x1 + x2 and x1 + x2 = TP*L*eb bit-exact over 1000 random tuples");
}

// ---- criterion 3: equilibrium convergence ----------------------------------

void criterion_convergence() {
    bool pass = true;
    std::string detail;
    for (int attackers : {1, 2}) {
        for (std::uint64_t seed = 1; seed <= 100 && pass; ++seed) {
            const auto result = engine::run_simulation(attack_config(seed, attackers, 0.0));
            int bound = 1;
            for (const auto& cm : result.cms)
                if (cm.behavior.kind == engine::BehaviorKind::RationalMalicious)
                    bound = std::max(bound, cm.forgiveness_rd);
            const auto dt_series = metrics::dt_norm_series(result);
            for (int rd = bound; rd <= static_cast<int>(result.rounds.size()); ++rd) {
                const auto& record = result.rounds[static_cast<std::size_t>(rd - 1)];
                for (const auto& cell : record.cms)
                    if (cell.ch_action != game::ChAction::Beacon ||
                        cell.cm_action != game::CmAction::NoDrop)
                        pass = false;
                if (std::fabs(dt_series[static_cast<std::size_t>(rd - 1)] - 1.0) > 1e-9) pass = false;
            }
            if (!pass) detail = " [seed " + std::to_string(seed) + ", " +
                                std::to_string(attackers) + " attacker(s)]";
        }
    }
    report(3, pass,
           "100 seeds x {1,2} attackers reach all-(B, ND) by max(i + i*|N|) with normalized DT = 1"
           " thereafter" + detail);
}

// ---- criterion 4: scenario ordering ----------------------------------------

void criterion_scenario_ordering() {
    int ok = 0;
    const int seeds = 100;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        const SimConfig config = attack_config(seed, 2, 0.0);
        const auto repeated = scenarios::run_repeated(config);
        const auto s1 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotNbNd, config);
        const auto s2 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotBD, config);
        const auto s3 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotNbD, config);
        if (repeated.dt > s1.dt && s2.dt > s3.dt) ++ok;
    }
    report(4, ok >= 99,
           "DT(repeated) > DT(one-shot 1) and DT(one-shot 2) > DT(one-shot 3) in " +
               std::to_string(ok) + "/100 paired seeds (>= 99 required)");
}

// ---- criterion 5: Nash and Pareto predicates --------------------------------

bool nash_at_converged_profile(const engine::SimResult& repeated) {
    const game::GameWeights w = repeated.config.weights();
    const int tp = w.window_packets;
    const auto& final_round = repeated.rounds.back();

    const double xi_drop_under_b =
        game::punishment({game::ChAction::Beacon, game::CmAction::Drop}, {0, tp}, w).applied_j;
    const double xi_nd_under_nb =
        game::punishment({game::ChAction::NoBeacon, game::CmAction::NoDrop}, {tp, tp}, w).applied_j;

    std::vector<game::DeviationCheck> players;
    double ch_current = 0.0;
    for (const auto& cell : final_round.cms) ch_current += cell.utility;

    std::vector<double> ch_alternatives;
    for (const auto& cell : final_round.cms) {
        // CM deviation: drop the window while the beacon stays granted
        const double dev = game::utility(cell.rssi, 0.0, xi_drop_under_b, w).total;
        players.push_back({cell.utility, {dev}});
        // CH deviation: withhold this CM's beacon; its utility falls by the x1 charge
        const double cm_under_nb = game::utility(cell.rssi, 1.0, xi_nd_under_nb, w).total;
        ch_alternatives.push_back(ch_current - cell.utility + cm_under_nb);
    }
    players.push_back({ch_current, ch_alternatives});
    return game::is_nash(players);
}

bool nash_at_mutual_defection(const engine::SimResult& repeated) {
    const game::GameWeights w = repeated.config.weights();
    const int tp = w.window_packets;
    const auto& final_round = repeated.rounds.back();

    const double xi_nb_d =
        game::punishment({game::ChAction::NoBeacon, game::CmAction::Drop}, {0, tp}, w).applied_j;
    const double xi_nb_nd =
        game::punishment({game::ChAction::NoBeacon, game::CmAction::NoDrop}, {tp, tp}, w).applied_j;
    const double xi_b_d =
        game::punishment({game::ChAction::Beacon, game::CmAction::Drop}, {0, tp}, w).applied_j;

    std::vector<game::DeviationCheck> players;
    double ch_current = 0.0;
    std::vector<double> current_utils;
    for (const auto& cell : final_round.cms) {
        const double u = game::utility(cell.rssi, 0.0, xi_nb_d, w).total;
        current_utils.push_back(u);
        ch_current += u;
    }
    std::vector<double> ch_alternatives;
    for (std::size_t i = 0; i < final_round.cms.size(); ++i) {
        const auto& cell = final_round.cms[i];
        // CM deviation: forward faithfully despite the withheld beacon
        const double dev = game::utility(cell.rssi, 1.0, xi_nb_nd, w).total;
        players.push_back({current_utils[i], {dev}});
        // CH deviation: grant this CM the beacon while it keeps dropping
        const double dev_cm = game::utility(cell.rssi, 0.0, xi_b_d, w).total;
        ch_alternatives.push_back(ch_current - current_utils[i] + dev_cm);
    }
    players.push_back({ch_current, ch_alternatives});
    return game::is_nash(players);
}

void criterion_nash_pareto() {
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 100 && pass; ++seed) {
        const SimConfig config = attack_config(seed, 2, 0.0);
        const auto repeated = scenarios::run_repeated(config);
        const auto s1 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotNbNd, config);
        const auto s2 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotBD, config);
        const auto s3 = scenarios::run_one_shot(scenarios::ScenarioId::OneShotNbD, config);

        if (!nash_at_converged_profile(repeated)) pass = false;
        if (nash_at_mutual_defection(repeated)) pass = false;
        if (!game::is_pareto_optimal_dt(repeated.dt, {s1.dt, s2.dt, s3.dt})) pass = false;
        if (game::is_pareto_optimal_dt(s3.dt, {repeated.dt, s1.dt, s2.dt})) pass = false;
    }
    report(5, pass,
           "(B, ND) profile is Nash and Pareto-optimal, (NB, D) profile is neither, 100 seeds");
}

// ---- criterion 6: hardware classification -----------------------------------

void criterion_hw_classification() {
    int hwl_ok = 0;
    int over_ok = 0;
    const int seeds = 100;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        const auto result = engine::run_simulation(attack_config(seed, 2, 0.2));

        std::vector<int> injected;
        int over_id = -1;
        for (const auto& cm : result.cms) {
            if (cm.behavior.kind == engine::BehaviorKind::HwFaulty) {
                injected.push_back(cm.id);
                if (cm.behavior.fault == engine::FaultMode::OverTransmit) over_id = cm.id;
            }
        }
        std::sort(injected.begin(), injected.end());
        if (result.hwl == injected) ++hwl_ok;

        const auto utils = metrics::per_cm_norm_utils(result);
        if (over_id > 0 && utils[static_cast<std::size_t>(over_id - 1)] > 1.0) ++over_ok;
    }
    report(6, hwl_ok >= 99 && over_ok >= 99,
           "HWL equals the injected fault set in " + std::to_string(hwl_ok) +
               "/100 seeds and the over-transmitter exceeds 100% utility in " +
               std::to_string(over_ok) + "/100 (>= 99 required)");
}

// ---- criterion 7: environment ordering ---------------------------------------

void criterion_environment_ordering() {
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 100 && pass; ++seed) {
        SimConfig ul = attack_config(seed, 2, 0.2);
        ul.env_name = "UL";
        SimConfig on = ul;
        on.env_name = "ON";
        const double ul_util = mean(metrics::per_cm_norm_utils(engine::run_simulation(ul)));
        const double on_util = mean(metrics::per_cm_norm_utils(engine::run_simulation(on)));
        if (!(ul_util > on_util)) pass = false;
    }
    report(7, pass, "isotropic equilibrium normalized utilities: UL > ON on every paired seed");
}

// ---- criterion 8: isotropy gap ------------------------------------------------

void criterion_isotropy_gap() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 25 && pass; ++seed) {
        SimConfig iso = attack_config(seed, 2, 0.0);
        iso.isotropic = true;
        const double iso_util = mean(metrics::per_cm_norm_utils(engine::run_simulation(iso)));

        std::vector<double> non_iso_utils;
        for (int index = 1; index <= 6; ++index) {
            SimConfig non_iso = iso;
            non_iso.isotropic = false;
            non_iso.doi_index = index;
            non_iso_utils.push_back(
                mean(metrics::per_cm_norm_utils(engine::run_simulation(non_iso))));
        }
        const double gap = mean(non_iso_utils) - iso_util;
        if (!(gap > 0.0) || !(gap <= 0.10 * iso_util)) {
            pass = false;
            detail = " [seed " + std::to_string(seed) + ": gap " + std::to_string(gap) + "]";
        }
    }
    report(8, pass,
           "mean non-isotropic equilibrium utility exceeds isotropic by at most 10% across the six"
           " DOI values" + detail);
}

// ---- criterion 9: lost-power trend --------------------------------------------

void criterion_lost_power() {
    bool pairwise = true;
    for (std::uint64_t seed = 1; seed <= 100 && pairwise; ++seed) {
        const SimConfig config = attack_config(seed, 2, 0.0);
        const auto repeated = scenarios::run_repeated(config);
        const auto nodefense = scenarios::run_no_defense(config);
        if (!(metrics::lost_power(nodefense, repeated) > 0.0)) pairwise = false;
    }

    bool increasing = true;
    for (std::uint64_t seed = 1; seed <= 100 && increasing; ++seed) {
        double previous = -1.0;
        for (int n : {10, 15, 20}) {
            SimConfig config = attack_config(seed, 2, 0.0);
            config.n_cms = n;
            config.c_factor = std::max(config.c_factor, static_cast<double>(n + 1));
            const auto result = scenarios::run_no_defense(config);
            if (!(result.lost_power_total_j > previous)) increasing = false;
            previous = result.lost_power_total_j;
        }
    }
    report(9, pairwise && increasing,
           "no-defense lost power exceeds the repeated game's on every paired seed and grows with"
           " |N| in {10, 15, 20}");
}

// ---- criterion 10: determinism and serialization --------------------------------

void criterion_determinism() {
    const SimConfig config = attack_config(42, 2, 0.2);
    const auto run_a = engine::run_simulation(config);
    const auto run_b = engine::run_simulation(config);
    const bool csv_identical = metrics::csv_string(run_a) == metrics::csv_string(run_b);

    const auto path = std::filesystem::temp_directory_path() / "sfgame_acceptance_roundtrip.jsonl";
    metrics::export_jsonl(run_a, path);
    const auto imported = metrics::import_jsonl(path);
    const auto bundle = metrics::bundle_from(run_a);
    bool roundtrip = imported.bundle.dt_series == bundle.dt_series &&
                     imported.bundle.per_cm_norm_utils == bundle.per_cm_norm_utils &&
                     imported.bundle.pkt_total == bundle.pkt_total &&
                     imported.bundle.pkt_eq_window == bundle.pkt_eq_window &&
                     imported.bundle.lost_power_j == bundle.lost_power_j &&
                     imported.bundle.equilibrium_round == bundle.equilibrium_round &&
                     imported.bundle.wall_clock_seconds == bundle.wall_clock_seconds &&
                     imported.rounds.size() == run_a.rounds.size();
    if (roundtrip) {
        for (std::size_t rd = 0; rd < run_a.rounds.size() && roundtrip; ++rd) {
            const auto& x = run_a.rounds[rd];
            const auto& y = imported.rounds[rd];
            if (y.utility_sum != x.utility_sum || y.optimum_sum != x.optimum_sum ||
                y.worst_sum != x.worst_sum || y.dt_running != x.dt_running)
                roundtrip = false;
            for (std::size_t i = 0; i < x.cms.size() && roundtrip; ++i)
                if (y.cms[i].utility != x.cms[i].utility || y.cms[i].rssi != x.cms[i].rssi ||
                    y.cms[i].xi_j != x.cms[i].xi_j ||
                    y.cms[i].energy_delta_j != x.cms[i].energy_delta_j ||
                    y.cms[i].forwarded != x.cms[i].forwarded)
                    roundtrip = false;
        }
    }
    std::filesystem::remove(path);
    report(10, csv_identical && roundtrip,
           "identical seeds give byte-identical CSV exports; JSON-lines round-trip is exact");
}

}  // namespace

int main() {
    std::printf("acceptance suite: clustered WSN repeated-game defense simulator\n");
    criterion_forgiveness();
    criterion_punishment_identity();
    criterion_convergence();
    criterion_scenario_ordering();
    criterion_nash_pareto();
    criterion_hw_classification();
    criterion_environment_ordering();
    criterion_isotropy_gap();
    criterion_lost_power();
    criterion_determinism();
    if (g_failures == 0)
        std::printf("all 10 criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
