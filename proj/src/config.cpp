#include "sfgame/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sfgame/errors.hpp"

namespace sfgame {

int SimConfig::rounds() const {
    return static_cast<int>(std::llround(c_factor * static_cast<double>(n_cms)));
}

double SimConfig::doi() const {
    if (doi_value) return *doi_value;
    return radio::kDoiValues.at(static_cast<std::size_t>(doi_index - 1));
}

radio::EnvironmentParams SimConfig::environment() const {
    radio::EnvironmentParams env = radio::environment(env_name);
    if (env_n) env.path_loss_exponent = *env_n;
    if (env_sigma_db) env.shadow_sigma_db = *env_sigma_db;
    if (env_pn_dbm) env.noise_power_dbm = *env_pn_dbm;
    return env;
}

game::GameWeights SimConfig::weights() const {
    game::GameWeights w;
    w.alpha = alpha;
    w.beta = beta;
    w.energy_per_bit_j = energy_per_bit_j;
    w.window_packets = window_packets;
    w.packet_len_bits = packet_len_bits;
    w.punishment_gain = punishment_gain;
    return w;
}

void SimConfig::validate() const {
    std::vector<std::string> errors;
    auto require = [&errors](bool ok, const std::string& message) {
        if (!ok) errors.push_back(message);
    };

    require(n_cms >= 1, "n_cms: must be at least 1");
    require(c_factor > n_cms, "c_factor: must exceed n_cms (c > |N|)");
    require(window_packets >= 1, "tp: must be at least 1");
    require(packet_len_bits >= 1, "packet_len_bits: must be at least 1");
    require(energy_per_bit_j > 0.0, "eb_joules: must be positive");
    require(alpha >= 0.0 && beta >= 0.0, "alpha/beta: must be nonnegative");
    require(std::fabs(alpha + beta - 1.0) <= 1e-9, "alpha/beta: must sum to 1");
    require(doi_index >= 1 && doi_index <= 6, "doi_index: must lie in 1..6");
    require(!doi_value || *doi_value > 0.0, "doi_value: must be positive");
    require(distance_m > 0.0, "d_ich_m: must be positive");
    require(profile.far_field_ref_m > 0.0, "d0_m: must be positive");
    require(distance_m >= profile.far_field_ref_m, "d_ich_m: must be at least d0_m (far-field model)");
    require(hw_fault_fraction >= 0.0 && hw_fault_fraction < 1.0, "hw_fault_fraction: must lie in [0, 1)");
    require(p_drop > 0.0 && p_drop <= 1.0, "p_drop: must lie in (0, 1]");
    require(over_gamma > 0.0, "gamma: must be positive");
    require(punishment_gain >= 0.0, "punishment_gain: must be nonnegative");
    require(profile.data_rate_bps > 0.0, "dr_bps: must be positive");
    require(profile.startup_seconds >= 0.0, "t0_seconds: must be nonnegative");
    require(profile.supply_volts > 0.0, "v_volts: must be positive");
    require(!env_n || *env_n > 0.0, "env_n: must be positive");
    require(!env_sigma_db || *env_sigma_db >= 0.0, "env_sigma_db: must be nonnegative");

    require(!profile.tx_current_ma.empty(), "tx_current_ma: table cannot be empty");
    for (std::size_t i = 1; i < profile.tx_current_ma.size(); ++i) {
        const bool ascending = profile.tx_current_ma[i].first > profile.tx_current_ma[i - 1].first &&
                               profile.tx_current_ma[i].second > profile.tx_current_ma[i - 1].second;
        if (!ascending) {
            errors.push_back("tx_current_ma: levels and currents must be strictly increasing");
            break;
        }
    }

    bool level_known = false;
    for (const auto& [h, ma] : profile.tx_current_ma)
        if (h == power_level) level_known = true;
    require(level_known, "power_level: not a known transmission level");

    try {
        (void)radio::environment(env_name);
    } catch (const ConfigError&) {
        errors.push_back("env: unknown environment '" + env_name + "'");
    }

    require(malicious_count >= 0, "malicious: count must be nonnegative");
    require(malicious_count <= n_cms, "malicious: count cannot exceed n_cms");
    for (int id : malicious_ids)
        require(id >= 1 && id <= n_cms, "malicious: id " + std::to_string(id) + " outside 1..n_cms");
    for (int id : hw_fault_ids)
        require(id >= 1 && id <= n_cms, "hw_fault_ids: id " + std::to_string(id) + " outside 1..n_cms");

    if (!errors.empty()) {
        std::ostringstream out;
        out << "invalid configuration (" << errors.size() << " violation"
            << (errors.size() == 1 ? "" : "s") << "):";
        for (const auto& e : errors) out << "\n  - " << e;
        throw ConfigError(out.str());
    }
}

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_double(std::string_view key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(std::string(key) + ": expected a number, got '" + value + "'");
    }
}

long long parse_int(std::string_view key, const std::string& value) {
    long long parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError(std::string(key) + ": expected an integer, got '" + value + "'");
    return parsed;
}

bool parse_bool(std::string_view key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(std::string(key) + ": expected true/false, got '" + value + "'");
}

std::vector<int> parse_id_list(std::string_view key, const std::string& value) {
    std::vector<int> ids;
    std::string token;
    std::istringstream in(value);
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty()) throw ConfigError(std::string(key) + ": empty id in list '" + value + "'");
        ids.push_back(static_cast<int>(parse_int(key, token)));
    }
    return ids;
}

using Setter = std::function<void(SimConfig&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"n_cms", [](SimConfig& c, const std::string& v) { c.n_cms = static_cast<int>(parse_int("n_cms", v)); }},
        {"c_factor", [](SimConfig& c, const std::string& v) { c.c_factor = parse_double("c_factor", v); }},
        {"tp", [](SimConfig& c, const std::string& v) { c.window_packets = static_cast<int>(parse_int("tp", v)); }},
        {"packet_len_bits", [](SimConfig& c, const std::string& v) { c.packet_len_bits = static_cast<long>(parse_int("packet_len_bits", v)); }},
        {"eb_joules", [](SimConfig& c, const std::string& v) { c.energy_per_bit_j = parse_double("eb_joules", v); }},
        {"alpha", [](SimConfig& c, const std::string& v) { c.alpha = parse_double("alpha", v); }},
        {"beta", [](SimConfig& c, const std::string& v) { c.beta = parse_double("beta", v); }},
        {"env", [](SimConfig& c, const std::string& v) { c.env_name = v; }},
        {"env_n", [](SimConfig& c, const std::string& v) { c.env_n = parse_double("env_n", v); }},
        {"env_sigma_db", [](SimConfig& c, const std::string& v) { c.env_sigma_db = parse_double("env_sigma_db", v); }},
        {"env_pn_dbm", [](SimConfig& c, const std::string& v) { c.env_pn_dbm = parse_double("env_pn_dbm", v); }},
        {"doi_index", [](SimConfig& c, const std::string& v) { c.doi_index = static_cast<int>(parse_int("doi_index", v)); }},
        {"doi_value", [](SimConfig& c, const std::string& v) { c.doi_value = parse_double("doi_value", v); }},
        {"isotropic", [](SimConfig& c, const std::string& v) { c.isotropic = parse_bool("isotropic", v); }},
        {"redraw_theta", [](SimConfig& c, const std::string& v) { c.redraw_theta = parse_bool("redraw_theta", v); }},
        {"d_ich_m", [](SimConfig& c, const std::string& v) { c.distance_m = parse_double("d_ich_m", v); }},
        {"d0_m", [](SimConfig& c, const std::string& v) { c.profile.far_field_ref_m = parse_double("d0_m", v); }},
        {"pl_f_db", [](SimConfig& c, const std::string& v) { c.profile.free_space_ref_db = parse_double("pl_f_db", v); }},
        {"power_level", [](SimConfig& c, const std::string& v) { c.power_level = static_cast<int>(parse_int("power_level", v)); }},
        {"malicious", [](SimConfig& c, const std::string& v) {
             if (v.find(',') != std::string::npos) {
                 c.malicious_ids = parse_id_list("malicious", v);
                 c.malicious_count = static_cast<int>(c.malicious_ids.size());
             } else {
                 c.malicious_ids.clear();
                 c.malicious_count = static_cast<int>(parse_int("malicious", v));
             }
         }},
        {"hw_fault_fraction", [](SimConfig& c, const std::string& v) { c.hw_fault_fraction = parse_double("hw_fault_fraction", v); }},
        {"hw_fault_ids", [](SimConfig& c, const std::string& v) { c.hw_fault_ids = parse_id_list("hw_fault_ids", v); }},
        {"p_drop", [](SimConfig& c, const std::string& v) { c.p_drop = parse_double("p_drop", v); }},
        {"gamma", [](SimConfig& c, const std::string& v) { c.over_gamma = parse_double("gamma", v); }},
        {"shadowing", [](SimConfig& c, const std::string& v) {
             if (v == "sampled") c.shadowing = ShadowingMode::Sampled;
             else if (v == "fixed") c.shadowing = ShadowingMode::Fixed;
             else throw ConfigError("shadowing: expected sampled or fixed, got '" + v + "'");
         }},
        {"punishment_gain", [](SimConfig& c, const std::string& v) { c.punishment_gain = parse_double("punishment_gain", v); }},
        {"seed", [](SimConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int("seed", v)); }},
        {"tx_current_ma", [](SimConfig& c, const std::string& v) {
             // full table replacement: level:mA pairs, e.g. 3:8.5,7:9.9,...
             std::vector<std::pair<int, double>> table;
             std::string token;
             std::istringstream in(v);
             while (std::getline(in, token, ',')) {
                 const auto colon = token.find(':');
                 if (colon == std::string::npos)
                     throw ConfigError("tx_current_ma: expected level:mA pairs, got '" + token + "'");
                 table.emplace_back(
                     static_cast<int>(parse_int("tx_current_ma", trim(token.substr(0, colon)))),
                     parse_double("tx_current_ma", trim(token.substr(colon + 1))));
             }
             c.profile.tx_current_ma = std::move(table);
         }},
        {"v_volts", [](SimConfig& c, const std::string& v) { c.profile.supply_volts = parse_double("v_volts", v); }},
        {"i0_amps", [](SimConfig& c, const std::string& v) { c.profile.radio_on_amps = parse_double("i0_amps", v); }},
        {"t0_seconds", [](SimConfig& c, const std::string& v) { c.profile.startup_seconds = parse_double("t0_seconds", v); }},
        {"dr_bps", [](SimConfig& c, const std::string& v) { c.profile.data_rate_bps = parse_double("dr_bps", v); }},
    };
    return table;
}

}  // namespace

void apply_override(SimConfig& config, std::string_view key, std::string_view value) {
    const auto it = setters().find(key);
    if (it == setters().end())
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    it->second(config, trim(value));
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [key, setter] : setters()) out.push_back(key);
        return out;
    }();
    return keys;
}

SimConfig load_config(const std::filesystem::path& path) {
    SimConfig config;
    apply_config_file(config, path);
    config.validate();
    return config;
}

void apply_config_file(SimConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path.string() + "'");

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            apply_override(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

}  // namespace sfgame
