#include "sfgame/commands.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sfgame/errors.hpp"
#include "sfgame/metrics.hpp"

namespace sfgame::commands {

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> export_result(const engine::SimResult& result,
                                                 const std::filesystem::path& out_dir,
                                                 ExportFormat format) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    const std::string stem = metrics::file_stem(result);
    if (format == ExportFormat::Csv || format == ExportFormat::Both) {
        const auto path = out_dir / (stem + ".csv");
        write_atomic(path, metrics::csv_string(result));
        written.push_back(path);
    }
    if (format == ExportFormat::Jsonl || format == ExportFormat::Both) {
        const auto path = out_dir / (stem + ".jsonl");
        metrics::export_jsonl(result, path);
        written.push_back(path);
    }
    return written;
}

std::string hwl_to_string(const std::vector<int>& hwl) {
    if (hwl.empty()) return "(empty)";
    std::ostringstream out;
    for (std::size_t i = 0; i < hwl.size(); ++i) out << (i ? "," : "") << hwl[i];
    return out.str();
}

void print_summary(const engine::SimResult& result, const metrics::MetricsBundle& bundle,
                   std::ostream& out) {
    out << "scenario            " << result.scenario << "\n"
        << "seed                " << result.config.seed << "\n"
        << "rounds              " << result.rounds.size() << "\n"
        << "equilibrium round   "
        << (bundle.equilibrium_round >= 0 ? std::to_string(bundle.equilibrium_round) : "not reached")
        << "\n"
        << "final DT            " << result.dt << "\n"
        << "final DT normalized "
        << (bundle.dt_series.empty() ? 0.0 : bundle.dt_series.back()) << "\n"
        << "packets delivered   " << bundle.pkt_total << "\n"
        << "lost power [J]      " << bundle.lost_power_j << "\n"
        << "HWL                 " << hwl_to_string(result.hwl) << "\n"
        << "wall clock [s]      " << result.wall_clock_seconds << "\n";
}

}  // namespace

int cmd_run(const SimConfig& config, const RunOptions& options, std::ostream& out) {
    config.validate();
    const engine::SimResult result = engine::run_simulation(config);
    const metrics::MetricsBundle bundle = metrics::bundle_from(result);
    const auto written = export_result(result, options.out_dir, options.format);
    print_summary(result, bundle, out);
    for (const auto& path : written) out << "wrote               " << path.string() << "\n";
    return 0;
}

int cmd_compare(const SimConfig& config, const RunOptions& options, std::ostream& out) {
    config.validate();
    const scenarios::ComparisonResult comparison = scenarios::run_comparison(config);
    const std::array<const engine::SimResult*, 5> runs = {
        &comparison.repeated, &comparison.one_shot_nb_nd, &comparison.one_shot_b_d,
        &comparison.one_shot_nb_d, &comparison.no_defense};

    std::filesystem::create_directories(options.out_dir);
    std::vector<std::filesystem::path> written;
    std::vector<metrics::MetricsBundle> bundles;
    for (const auto* run : runs) {
        for (auto& path : export_result(*run, options.out_dir, options.format))
            written.push_back(std::move(path));
        bundles.push_back(metrics::bundle_from(*run));
    }

    const std::string tag = config.env_name + "_" +
                            (config.isotropic ? "iso" : "doi" + std::to_string(config.doi_index)) +
                            "_" + std::to_string(config.seed);

    std::ostringstream series;
    series << "rd";
    for (const auto* run : runs) series << ",dt_norm_" << run->scenario;
    series << '\n';
    for (std::size_t rd = 0; rd < comparison.repeated.rounds.size(); ++rd) {
        series << (rd + 1);
        for (const auto& bundle : bundles) series << ',' << bundle.dt_series[rd];
        series << '\n';
    }
    const auto series_path = options.out_dir / ("compare_series_" + tag + ".csv");
    write_atomic(series_path, series.str());
    written.push_back(series_path);

    std::ostringstream summary;
    summary << "scenario,dt,dt_norm_final,pkt_total,pkt_eq_window,lost_power_j,"
               "lost_power_vs_repeated_j,equilibrium_round\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& bundle = bundles[i];
        summary << runs[i]->scenario << ',' << runs[i]->dt << ','
                << (bundle.dt_series.empty() ? 0.0 : bundle.dt_series.back()) << ','
                << bundle.pkt_total << ',' << bundle.pkt_eq_window << ',' << bundle.lost_power_j
                << ',' << metrics::lost_power(*runs[i], comparison.repeated) << ','
                << bundle.equilibrium_round << '\n';
    }
    const auto summary_path = options.out_dir / ("compare_summary_" + tag + ".csv");
    write_atomic(summary_path, summary.str());
    written.push_back(summary_path);

    out << "paired comparison over seed " << config.seed << "\n";
    out << "scenario    dt          pkt_eq   lost_power_j\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out << std::left << std::setw(12) << runs[i]->scenario << std::setw(12) << runs[i]->dt
            << std::setw(9) << bundles[i].pkt_eq_window << bundles[i].lost_power_j << "\n";
    }
    for (const auto& path : written) out << "wrote " << path.string() << "\n";
    return 0;
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "env") return SweepAxis::Env;
    if (name == "doi") return SweepAxis::Doi;
    if (name == "n_cms") return SweepAxis::NCms;
    if (name == "isotropy") return SweepAxis::Isotropy;
    throw ConfigError("unknown sweep axis '" + std::string(name) +
                      "' (expected env, doi, n_cms or isotropy)");
}

namespace {

std::vector<SimConfig> sweep_points(const SimConfig& base, const SweepOptions& options) {
    std::vector<SimConfig> points = {base};
    for (const SweepAxis axis : options.axes) {
        std::vector<SimConfig> next;
        for (const SimConfig& point : points) {
            switch (axis) {
                case SweepAxis::Env:
                    for (const auto& env : radio::environments()) {
                        SimConfig p = point;
                        p.env_name = std::string(env.name);
                        next.push_back(std::move(p));
                    }
                    break;
                case SweepAxis::Doi:
                    for (int index = 1; index <= 6; ++index) {
                        SimConfig p = point;
                        p.doi_index = index;
                        p.doi_value.reset();
                        next.push_back(std::move(p));
                    }
                    break;
                case SweepAxis::NCms:
                    for (int n : options.n_cms_values) {
                        SimConfig p = point;
                        p.n_cms = n;
                        // keep the round-count rule valid across cluster sizes
                        p.c_factor = std::max(p.c_factor, static_cast<double>(n + 1));
                        next.push_back(std::move(p));
                    }
                    break;
                case SweepAxis::Isotropy:
                    for (bool iso : {true, false}) {
                        SimConfig p = point;
                        p.isotropic = iso;
                        next.push_back(std::move(p));
                    }
                    break;
            }
        }
        points = std::move(next);
    }
    return points;
}

engine::SimResult run_scenario(scenarios::ScenarioId id, const SimConfig& config) {
    switch (id) {
        case scenarios::ScenarioId::Repeated: return scenarios::run_repeated(config);
        case scenarios::ScenarioId::NoDefense: return scenarios::run_no_defense(config);
        default: return scenarios::run_one_shot(id, config);
    }
}

}  // namespace

int cmd_sweep(const SimConfig& config, const SweepOptions& options, std::ostream& out) {
    config.validate();
    const std::vector<SimConfig> points = sweep_points(config, options);
    for (const auto& point : points) point.validate();

    std::filesystem::create_directories(options.out_dir);

    struct PointOutcome {
        bool skipped = false;
        std::string label;
        double dt = 0.0;
        double dt_norm_final = 0.0;
        double mean_norm_util = 0.0;
        long pkt_total = 0;
        double lost_power_j = 0.0;
        int equilibrium_round = -1;
        double wall_clock_seconds = 0.0;
    };
    std::vector<PointOutcome> outcomes(points.size());

    const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
    const unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs) : hardware;

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t index = cursor.fetch_add(1);
            if (index >= points.size() || failed.load()) return;
            const SimConfig& point = points[index];
            auto& outcome = outcomes[index];
            try {
                // probe the primary export path for resumability
                engine::SimResult probe;
                probe.config = point;
                probe.scenario = std::string(scenarios::scenario_name(options.scenario));
                const std::string stem = metrics::file_stem(probe);
                const auto csv_path = options.out_dir / (stem + ".csv");
                const auto jsonl_path = options.out_dir / (stem + ".jsonl");
                const bool exists =
                    (options.format != ExportFormat::Jsonl && std::filesystem::exists(csv_path)) ||
                    (options.format != ExportFormat::Csv && std::filesystem::exists(jsonl_path));
                outcome.label = point.env_name + "," +
                                (point.isotropic ? "iso" : "doi" + std::to_string(point.doi_index)) +
                                "," + std::to_string(point.n_cms);
                if (options.resume && exists) {
                    outcome.skipped = true;
                    continue;
                }
                const engine::SimResult result = run_scenario(options.scenario, point);
                const metrics::MetricsBundle bundle = metrics::bundle_from(result);
                export_result(result, options.out_dir, options.format);
                outcome.dt = result.dt;
                outcome.dt_norm_final = bundle.dt_series.empty() ? 0.0 : bundle.dt_series.back();
                double util_sum = 0.0;
                for (double u : bundle.per_cm_norm_utils) util_sum += u;
                outcome.mean_norm_util =
                    bundle.per_cm_norm_utils.empty()
                        ? 0.0
                        : util_sum / static_cast<double>(bundle.per_cm_norm_utils.size());
                outcome.pkt_total = bundle.pkt_total;
                outcome.lost_power_j = bundle.lost_power_j;
                outcome.equilibrium_round = bundle.equilibrium_round;
                outcome.wall_clock_seconds = bundle.wall_clock_seconds;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure_message = e.what();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, points.size()); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("sweep point failed: " + failure_message);

    std::ostringstream summary;
    summary << "env,mode,n_cms,dt,dt_norm_final,mean_norm_util,pkt_total,lost_power_j,"
               "equilibrium_round,wall_clock_seconds,skipped\n";
    for (const auto& outcome : outcomes) {
        summary << outcome.label << ',' << outcome.dt << ',' << outcome.dt_norm_final << ','
                << outcome.mean_norm_util << ',' << outcome.pkt_total << ','
                << outcome.lost_power_j << ',' << outcome.equilibrium_round << ','
                << outcome.wall_clock_seconds << ',' << (outcome.skipped ? 1 : 0) << '\n';
    }
    const auto summary_path =
        options.out_dir /
        ("sweep_summary_" + std::string(scenarios::scenario_name(options.scenario)) + "_" +
         std::to_string(config.seed) + ".csv");
    write_atomic(summary_path, summary.str());

    out << "sweep of " << points.size() << " point(s), " << jobs << " worker(s)\n";
    out << "wrote " << summary_path.string() << "\n";
    return 0;
}

}  // namespace sfgame::commands
