#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfgame/config.hpp"
#include "sfgame/scenarios.hpp"

namespace sfgame::commands {

enum class ExportFormat { Csv, Jsonl, Both };

struct RunOptions {
    std::filesystem::path out_dir = ".";
    ExportFormat format = ExportFormat::Csv;
};

/// Runs the repeated game, writes exports and prints a summary. Returns the
/// process exit status (0 on success).
int cmd_run(const SimConfig& config, const RunOptions& options, std::ostream& out);

/// Runs the repeated game, the three one-shot games and the no-defense
/// baseline on paired streams; writes per-scenario exports plus a joined
/// comparison table.
int cmd_compare(const SimConfig& config, const RunOptions& options, std::ostream& out);

enum class SweepAxis { Env, Doi, NCms, Isotropy };

SweepAxis parse_axis(std::string_view name);  // throws ConfigError

struct SweepOptions {
    std::filesystem::path out_dir = ".";
    ExportFormat format = ExportFormat::Csv;
    std::vector<SweepAxis> axes;
    scenarios::ScenarioId scenario = scenarios::ScenarioId::Repeated;
    int jobs = 0;      ///< 0: logical core count
    bool resume = false;
    std::vector<int> n_cms_values = {10, 15, 20};
};

/// Runs the cross-product of the requested axes, one result file per point
/// (written atomically) plus a summary table. Points execute in parallel.
int cmd_sweep(const SimConfig& config, const SweepOptions& options, std::ostream& out);

}  // namespace sfgame::commands
