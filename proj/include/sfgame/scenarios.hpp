#pragma once

#include <string_view>

#include "sfgame/engine.hpp"

namespace sfgame::scenarios {

/// The three fixed-action one-shot games, the repeated game and the
/// no-defense baseline. The one-shot ids pin the CH's stance toward every CM
/// and the attackers' action for the whole run; benevolent CMs always forward
/// and hardware faults override whatever was pinned.
enum class ScenarioId {
    OneShotNbNd,  ///< CH: NoBeacon, attackers: NoDrop  (everyone cooperates, nobody rewarded)
    OneShotBD,    ///< CH: Beacon,   attackers: Drop
    OneShotNbD,   ///< CH: NoBeacon, attackers: Drop    (mutual defection)
    Repeated,
    NoDefense,
};

std::string_view scenario_name(ScenarioId id);

/// Runs one of the three one-shot baselines; throws UsageError for
/// Repeated/NoDefense.
engine::SimResult run_one_shot(ScenarioId id, const SimConfig& config);

/// The network without the defense: the CH always grants the beacon, attackers
/// never gain an incentive to switch, faults are never detected.
engine::SimResult run_no_defense(const SimConfig& config);

/// The repeated punish-and-forgive game.
engine::SimResult run_repeated(const SimConfig& config);

/// All five runs over the same configuration. Every run consumes identical
/// random streams, so cross-scenario orderings are paired, not noise.
struct ComparisonResult {
    engine::SimResult repeated;
    engine::SimResult one_shot_nb_nd;
    engine::SimResult one_shot_b_d;
    engine::SimResult one_shot_nb_d;
    engine::SimResult no_defense;
};

ComparisonResult run_comparison(const SimConfig& config);

}  // namespace sfgame::scenarios
