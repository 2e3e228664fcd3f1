#include "sfgame/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sfgame/errors.hpp"
#include "sfgame/radio.hpp"

namespace sfgame::metrics {

namespace {

constexpr std::string_view kReferenceEnv = "UL";

std::string fmt(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string pct(double fraction) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", fraction * 100.0);
    return buf;
}

}  // namespace

std::vector<double> normalize_dt(const std::vector<double>& raw, const std::vector<double>& optimum) {
    if (raw.size() != optimum.size())
        throw std::invalid_argument("raw and optimum series differ in length");
    std::vector<double> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(optimum[i] > 0.0)) throw std::domain_error("optimum DT must be positive");
        out.push_back(std::clamp(raw[i] / optimum[i], 0.0, 1.0));
    }
    return out;
}

std::vector<double> dt_norm_series(const engine::SimResult& result) {
    // Span normalization between the all-defect floor and the all-cooperate
    // optimum of the same round draws. Equals 1.0 exactly at the converged
    // profile and stays defined in environments whose raw utility scale is
    // negative (where the plain optimum ratio is not).
    std::vector<double> out;
    out.reserve(result.rounds.size());
    for (const auto& record : result.rounds) {
        const double span = record.optimum_sum - record.worst_sum;
        if (!(span > 0.0)) throw std::domain_error("optimum DT must exceed the worst-case DT");
        out.push_back(std::clamp((record.utility_sum - record.worst_sum) / span, 0.0, 1.0));
    }
    return out;
}

double nominal_rssi(const SimConfig& config, double eta) {
    const double tc = radio::transmission_cost_j(config.profile, config.power_level,
                                                 config.packet_len_bits);
    radio::LinkGeometry geom;
    geom.distance_m = config.distance_m;
    const double pl = radio::nominal_path_loss_db(config.environment(), geom, config.profile, eta);
    return radio::rssi_score(tc, pl, config.environment().noise_power_dbm);
}

double reference_utility(const SimConfig& config) {
    const auto& ref_env = radio::environment(kReferenceEnv);
    const double eta_ref = config.isotropic ? 1.0 : config.doi();
    const double tc = radio::transmission_cost_j(config.profile, config.power_level,
                                                 config.packet_len_bits);
    radio::LinkGeometry geom;
    geom.distance_m = config.distance_m;
    const double pl = radio::nominal_path_loss_db(ref_env, geom, config.profile, eta_ref);
    const double rssi_ref = radio::rssi_score(tc, pl, ref_env.noise_power_dbm);
    return config.alpha * rssi_ref + config.beta * 1.0;
}

std::pair<int, int> equilibrium_window(const engine::SimResult& result) {
    const int n_rounds = static_cast<int>(result.rounds.size());
    if (n_rounds == 0) return {1, 0};
    if (result.equilibrium_round >= 1 && result.equilibrium_round <= n_rounds)
        return {result.equilibrium_round, n_rounds};
    return {std::max(1, n_rounds - result.config.n_cms + 1), n_rounds};
}

std::vector<double> per_cm_norm_utils(const engine::SimResult& result) {
    const auto [first, last] = equilibrium_window(result);
    const SimConfig& config = result.config;
    const double reference = reference_utility(config);
    const double gain = config.punishment_gain;

    std::vector<double> out;
    out.reserve(result.cms.size());
    for (const auto& cm : result.cms) {
        double rl_sum = 0.0;
        double xi_scaled_sum = 0.0;
        int count = 0;
        for (int rd = first; rd <= last; ++rd) {
            const auto& cell = result.rounds[static_cast<std::size_t>(rd - 1)]
                                   .cms[static_cast<std::size_t>(cm.id - 1)];
            rl_sum += cell.rl;
            xi_scaled_sum += gain * cell.xi_j;
            ++count;
        }
        const double rl_mean = count > 0 ? rl_sum / count : 0.0;
        const double xi_mean = count > 0 ? xi_scaled_sum / count : 0.0;
        const double eta_nom =
            (config.isotropic || cm.theta_deg == 0.0) ? 1.0 : 0.5 * config.doi();
        const double u_nom =
            config.alpha * nominal_rssi(config, eta_nom) + config.beta * rl_mean - xi_mean;
        out.push_back(u_nom / reference);
    }
    return out;
}

MetricsBundle bundle_from(const engine::SimResult& result) {
    MetricsBundle bundle;
    bundle.dt_series = dt_norm_series(result);
    bundle.per_cm_norm_utils = per_cm_norm_utils(result);
    bundle.pkt_total = result.pkt_delivered_total;
    bundle.pkt_eq_window = result.pkt_delivered_eq_window;
    bundle.lost_power_j = result.lost_power_total_j;
    bundle.equilibrium_round = result.equilibrium_round;
    bundle.wall_clock_seconds = result.wall_clock_seconds;
    return bundle;
}

double lost_power(const engine::SimResult& result, const engine::SimResult& reference) {
    const SimConfig& a = result.config;
    const SimConfig& b = reference.config;
    const bool same = a.seed == b.seed && a.n_cms == b.n_cms && a.c_factor == b.c_factor &&
                      a.env_name == b.env_name && a.window_packets == b.window_packets &&
                      a.packet_len_bits == b.packet_len_bits && a.isotropic == b.isotropic &&
                      a.malicious_count == b.malicious_count &&
                      a.hw_fault_fraction == b.hw_fault_fraction &&
                      a.distance_m == b.distance_m && a.power_level == b.power_level;
    if (!same)
        throw UsageError("lost_power compares runs of the same configuration; got '" +
                         result.scenario + "' vs '" + reference.scenario +
                         "' with differing configs");
    return result.lost_power_total_j - reference.lost_power_total_j;
}

std::string csv_string(const engine::SimResult& result) {
    const double reference = reference_utility(result.config);
    std::ostringstream out;
    out << "rd,cm_id,ch_action,cm_action,forwarded,rl,xi_joules,utility,norm_utility,energy_j\n";
    for (const auto& record : result.rounds) {
        for (std::size_t i = 0; i < record.cms.size(); ++i) {
            const auto& cell = record.cms[i];
            out << record.rd << ',' << (i + 1) << ','
                << (cell.ch_action == game::ChAction::Beacon ? "B" : "NB") << ','
                << (cell.cm_action == game::CmAction::NoDrop ? "ND" : "D") << ','
                << cell.forwarded << ',' << fmt(cell.rl) << ',' << fmt(cell.xi_j) << ','
                << fmt(cell.utility) << ',' << pct(cell.utility / reference) << ','
                << fmt(cell.energy_delta_j) << '\n';
        }
    }
    return out.str();
}

void export_csv(const engine::SimResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV export to '" + path.string() + "'");
    out << csv_string(result);
    if (!out) throw std::runtime_error("write failed for CSV export '" + path.string() + "'");
}

namespace {

nlohmann::json bundle_to_json(const MetricsBundle& bundle) {
    return nlohmann::json{
        {"dt_series", bundle.dt_series},
        {"per_cm_norm_utils", bundle.per_cm_norm_utils},
        {"pkt_total", bundle.pkt_total},
        {"pkt_eq_window", bundle.pkt_eq_window},
        {"lost_power_j", bundle.lost_power_j},
        {"equilibrium_round", bundle.equilibrium_round},
        {"wall_clock_seconds", bundle.wall_clock_seconds},
    };
}

MetricsBundle bundle_from_json(const nlohmann::json& j) {
    MetricsBundle bundle;
    bundle.dt_series = j.at("dt_series").get<std::vector<double>>();
    bundle.per_cm_norm_utils = j.at("per_cm_norm_utils").get<std::vector<double>>();
    bundle.pkt_total = j.at("pkt_total").get<long>();
    bundle.pkt_eq_window = j.at("pkt_eq_window").get<long>();
    bundle.lost_power_j = j.at("lost_power_j").get<double>();
    bundle.equilibrium_round = j.at("equilibrium_round").get<int>();
    bundle.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    return bundle;
}

}  // namespace

void export_jsonl(const engine::SimResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write JSON-lines export to '" + path.string() + "'");

    nlohmann::json meta{
        {"type", "meta"},
        {"scenario", result.scenario},
        {"seed", result.config.seed},
        {"n_cms", result.config.n_cms},
        {"env", result.config.env_name},
        {"isotropic", result.config.isotropic},
        {"doi", result.config.doi()},
        {"bundle", bundle_to_json(bundle_from(result))},
    };
    out << meta.dump() << '\n';

    for (const auto& record : result.rounds) {
        nlohmann::json cms = nlohmann::json::array();
        for (const auto& cell : record.cms) {
            cms.push_back(nlohmann::json{
                {"ch", cell.ch_action == game::ChAction::Beacon ? "B" : "NB"},
                {"cm", cell.cm_action == game::CmAction::NoDrop ? "ND" : "D"},
                {"fwd", cell.forwarded},
                {"rl", cell.rl},
                {"xi", cell.xi_j},
                {"u", cell.utility},
                {"rssi", cell.rssi},
                {"de", cell.energy_delta_j},
                {"dl", cell.lost_delta_j},
            });
        }
        nlohmann::json line{
            {"type", "round"},
            {"rd", record.rd},
            {"utility_sum", record.utility_sum},
            {"optimum_sum", record.optimum_sum},
            {"worst_sum", record.worst_sum},
            {"dt_running", record.dt_running},
            {"cms", std::move(cms)},
        };
        out << line.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed for JSON-lines export '" + path.string() + "'");
}

ImportedRun import_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read JSON-lines import from '" + path.string() + "'");

    ImportedRun run;
    std::string line;
    bool meta_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "meta") {
            run.scenario = j.at("scenario").get<std::string>();
            run.bundle = bundle_from_json(j.at("bundle"));
            meta_seen = true;
        } else if (type == "round") {
            engine::RoundRecord record;
            record.rd = j.at("rd").get<int>();
            record.utility_sum = j.at("utility_sum").get<double>();
            record.optimum_sum = j.at("optimum_sum").get<double>();
            record.worst_sum = j.at("worst_sum").get<double>();
            record.dt_running = j.at("dt_running").get<double>();
            for (const auto& c : j.at("cms")) {
                engine::CmRound cell;
                cell.ch_action = c.at("ch").get<std::string>() == "B" ? game::ChAction::Beacon
                                                                      : game::ChAction::NoBeacon;
                cell.cm_action = c.at("cm").get<std::string>() == "ND" ? game::CmAction::NoDrop
                                                                       : game::CmAction::Drop;
                cell.forwarded = c.at("fwd").get<int>();
                cell.rl = c.at("rl").get<double>();
                cell.xi_j = c.at("xi").get<double>();
                cell.utility = c.at("u").get<double>();
                cell.rssi = c.at("rssi").get<double>();
                cell.energy_delta_j = c.at("de").get<double>();
                cell.lost_delta_j = c.at("dl").get<double>();
                record.cms.push_back(cell);
            }
            run.rounds.push_back(std::move(record));
        } else {
            throw std::runtime_error("unknown record type '" + type + "' in '" + path.string() + "'");
        }
    }
    if (!meta_seen) throw std::runtime_error("missing meta line in '" + path.string() + "'");
    return run;
}

std::string file_stem(const engine::SimResult& result) {
    const SimConfig& config = result.config;
    std::string doi_label = config.isotropic ? "iso" : ("doi" + std::to_string(config.doi_index));
    if (!config.isotropic && config.doi_value) doi_label = "doiCustom";
    return result.scenario + "_" + config.env_name + "_" + doi_label + "_" +
           std::to_string(config.seed);
}

}  // namespace sfgame::metrics
