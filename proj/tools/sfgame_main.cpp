#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfgame/commands.hpp"
#include "sfgame/config.hpp"
#include "sfgame/errors.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> sets;  // key=value overrides
    std::string seed;
    std::string env;
    std::string doi_index;
    std::string malicious;
    std::string hw_fault_fraction;
    bool isotropic = false;
    bool non_isotropic = false;
    std::string out_dir = ".";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file (key = value lines)");
    cmd->add_option("--set", flags.sets, "override any configuration key, e.g. --set tp=50")
        ->type_name("KEY=VALUE");
    cmd->add_option("--seed", flags.seed, "master seed (also SIM_SEED env var)");
    cmd->add_option("--env", flags.env, "environment: OL, ON, UL, UN, IL, IN");
    cmd->add_option("--doi-index", flags.doi_index, "degree-of-irregularity index, 1..6");
    cmd->add_option("--malicious", flags.malicious, "attacker count or comma-separated ids");
    cmd->add_option("--hw-fault-fraction", flags.hw_fault_fraction,
                    "fraction of CMs with an injected HW fault");
    cmd->add_flag("--isotropic", flags.isotropic, "isotropic radiation");
    cmd->add_flag("--non-isotropic", flags.non_isotropic, "non-isotropic radiation");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--format", flags.format, "export format: csv, jsonl or both")
        ->check(CLI::IsMember({"csv", "jsonl", "both"}));
}

sfgame::SimConfig build_config(const CommonFlags& flags) {
    sfgame::SimConfig config;
    if (const char* env_seed = std::getenv("SIM_SEED"); env_seed && *env_seed)
        sfgame::apply_override(config, "seed", env_seed);
    if (!flags.config_path.empty()) sfgame::apply_config_file(config, flags.config_path);
    for (const auto& kv : flags.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw sfgame::ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
        sfgame::apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!flags.seed.empty()) sfgame::apply_override(config, "seed", flags.seed);
    if (!flags.env.empty()) sfgame::apply_override(config, "env", flags.env);
    if (!flags.doi_index.empty()) sfgame::apply_override(config, "doi_index", flags.doi_index);
    if (!flags.malicious.empty()) sfgame::apply_override(config, "malicious", flags.malicious);
    if (!flags.hw_fault_fraction.empty())
        sfgame::apply_override(config, "hw_fault_fraction", flags.hw_fault_fraction);
    if (flags.isotropic && flags.non_isotropic)
        throw sfgame::ConfigError("--isotropic and --non-isotropic are mutually exclusive");
    if (flags.isotropic) config.isotropic = true;
    if (flags.non_isotropic) config.isotropic = false;
    return config;
}

sfgame::commands::ExportFormat parse_format(const std::string& format) {
    if (format == "jsonl") return sfgame::commands::ExportFormat::Jsonl;
    if (format == "both") return sfgame::commands::ExportFormat::Both;
    return sfgame::commands::ExportFormat::Csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered WSN repeated-game defense simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags, compare_flags, sweep_flags;

    CLI::App* run_cmd = app.add_subcommand("run", "run the repeated game once");
    add_common(run_cmd, run_flags);

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "run the repeated game, the three one-shot games and the no-defense "
                   "baseline on paired seeds");
    add_common(compare_cmd, compare_flags);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a sweep across env/doi/n_cms/isotropy");
    add_common(sweep_cmd, sweep_flags);
    std::vector<std::string> axes;
    std::string sweep_scenario = "repeated";
    int jobs = 0;
    bool resume = false;
    sweep_cmd->add_option("--axis", axes, "sweep axis: env, doi, n_cms, isotropy (repeatable)")
        ->required();
    sweep_cmd->add_option("--scenario", sweep_scenario, "scenario to sweep")
        ->check(CLI::IsMember({"repeated", "nodefense", "oneshot1", "oneshot2", "oneshot3"}));
    sweep_cmd->add_option("--jobs", jobs, "parallel workers (default: logical cores)");
    sweep_cmd->add_flag("--resume", resume, "skip points whose result files already exist");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            sfgame::commands::RunOptions options;
            options.out_dir = run_flags.out_dir;
            options.format = parse_format(run_flags.format);
            return sfgame::commands::cmd_run(build_config(run_flags), options, std::cout);
        }
        if (compare_cmd->parsed()) {
            sfgame::commands::RunOptions options;
            options.out_dir = compare_flags.out_dir;
            options.format = parse_format(compare_flags.format);
            return sfgame::commands::cmd_compare(build_config(compare_flags), options, std::cout);
        }
        if (sweep_cmd->parsed()) {
            sfgame::commands::SweepOptions options;
            options.out_dir = sweep_flags.out_dir;
            options.format = parse_format(sweep_flags.format);
            options.jobs = jobs;
            options.resume = resume;
            for (const auto& axis : axes) options.axes.push_back(sfgame::commands::parse_axis(axis));
            if (sweep_scenario == "repeated")
                options.scenario = sfgame::scenarios::ScenarioId::Repeated;
            else if (sweep_scenario == "nodefense")
                options.scenario = sfgame::scenarios::ScenarioId::NoDefense;
            else if (sweep_scenario == "oneshot1")
                options.scenario = sfgame::scenarios::ScenarioId::OneShotNbNd;
            else if (sweep_scenario == "oneshot2")
                options.scenario = sfgame::scenarios::ScenarioId::OneShotBD;
            else
                options.scenario = sfgame::scenarios::ScenarioId::OneShotNbD;
            return sfgame::commands::cmd_sweep(build_config(sweep_flags), options, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
