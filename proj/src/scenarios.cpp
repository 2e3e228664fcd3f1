#include "sfgame/scenarios.hpp"

#include "sfgame/errors.hpp"

namespace sfgame::scenarios {

std::string_view scenario_name(ScenarioId id) {
    switch (id) {
        case ScenarioId::OneShotNbNd: return "oneshot1";
        case ScenarioId::OneShotBD: return "oneshot2";
        case ScenarioId::OneShotNbD: return "oneshot3";
        case ScenarioId::Repeated: return "repeated";
        case ScenarioId::NoDefense: return "nodefense";
    }
    return "unknown";
}

engine::SimResult run_one_shot(ScenarioId id, const SimConfig& config) {
    engine::PolicyOverride policy;
    policy.classify = false;
    switch (id) {
        case ScenarioId::OneShotNbNd:
            policy.ch_action = game::ChAction::NoBeacon;
            policy.malicious_action = game::CmAction::NoDrop;
            break;
        case ScenarioId::OneShotBD:
            policy.ch_action = game::ChAction::Beacon;
            policy.malicious_action = game::CmAction::Drop;
            break;
        case ScenarioId::OneShotNbD:
            policy.ch_action = game::ChAction::NoBeacon;
            policy.malicious_action = game::CmAction::Drop;
            break;
        case ScenarioId::Repeated:
        case ScenarioId::NoDefense:
            throw UsageError("run_one_shot handles only the three one-shot scenarios");
    }
    return engine::run_simulation(config, policy, std::string(scenario_name(id)));
}

engine::SimResult run_no_defense(const SimConfig& config) {
    engine::PolicyOverride policy;
    policy.classify = false;
    policy.ch_action = game::ChAction::Beacon;
    policy.malicious_action = game::CmAction::Drop;
    return engine::run_simulation(config, policy, std::string(scenario_name(ScenarioId::NoDefense)));
}

engine::SimResult run_repeated(const SimConfig& config) {
    return engine::run_simulation(config);
}

ComparisonResult run_comparison(const SimConfig& config) {
    ComparisonResult c;
    c.repeated = run_repeated(config);
    c.one_shot_nb_nd = run_one_shot(ScenarioId::OneShotNbNd, config);
    c.one_shot_b_d = run_one_shot(ScenarioId::OneShotBD, config);
    c.one_shot_nb_d = run_one_shot(ScenarioId::OneShotNbD, config);
    c.no_defense = run_no_defense(config);
    return c;
}

}  // namespace sfgame::scenarios
