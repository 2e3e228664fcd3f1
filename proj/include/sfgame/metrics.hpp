#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sfgame/engine.hpp"

namespace sfgame::metrics {

/// Reported metrics of one run.
struct MetricsBundle {
    std::vector<double> dt_series;          ///< per-round normalized DT, clamped to [0, 1]
    std::vector<double> per_cm_norm_utils;  ///< equilibrium per-CM normalized utilities
    long pkt_total = 0;
    long pkt_eq_window = 0;                 ///< delivered over the final |N| rounds
    double lost_power_j = 0.0;
    int equilibrium_round = -1;
    double wall_clock_seconds = 0.0;
};

/// Element-wise raw/optimum ratio, clamped to [0, 1]. Throws std::domain_error
/// when any optimum entry is not positive, std::invalid_argument on length
/// mismatch.
std::vector<double> normalize_dt(const std::vector<double>& raw, const std::vector<double>& optimum);

/// Per-round normalized DT of a run: the round's utility sum placed between
/// the all-defect floor and the all-cooperate optimum computed under the same
/// draws, clamped to [0, 1]. Exactly 1.0 once every CM holds (B, ND).
std::vector<double> dt_norm_series(const engine::SimResult& result);

/// Zero-shadow RSSI of the configured link in its own environment at the
/// given direction coefficient.
double nominal_rssi(const SimConfig& config, double eta);

/// Normalization constant for utility reporting: the compliant-CM utility at
/// zero shadowing in the reference environment (UL, the best of the six) at
/// the mode's most lossy direction coefficient (1 for isotropic, DOI for
/// non-isotropic). Shared across environments so cross-environment orderings
/// survive normalization.
double reference_utility(const SimConfig& config);

/// Equilibrium reporting window [first, last] (1-based, inclusive): from the
/// equilibrium round when one was reached, the final |N| rounds otherwise.
std::pair<int, int> equilibrium_window(const engine::SimResult& result);

/// Per-CM normalized utilities at equilibrium: nominal (zero-shadow,
/// expected-direction) utility at the CM's observed equilibrium behavior,
/// divided by reference_utility. A compliant CM sits at 1.0 in the reference
/// environment; an over-transmitting one exceeds it.
std::vector<double> per_cm_norm_utils(const engine::SimResult& result);

MetricsBundle bundle_from(const engine::SimResult& result);

/// Lost power of `result` relative to `reference`: the difference of the
/// cumulated retransmission and denied-sleep ledgers. Both runs must share the
/// configuration (UsageError otherwise).
double lost_power(const engine::SimResult& result, const engine::SimResult& reference);

/// CSV export, one row per (round, CM). Stable column order, LF endings.
std::string csv_string(const engine::SimResult& result);
void export_csv(const engine::SimResult& result, const std::filesystem::path& path);

/// JSON-lines export: a meta line carrying the bundle, then one round record
/// per line. Numeric fields round-trip exactly.
void export_jsonl(const engine::SimResult& result, const std::filesystem::path& path);

struct ImportedRun {
    std::string scenario;
    MetricsBundle bundle;
    std::vector<engine::RoundRecord> rounds;
};

ImportedRun import_jsonl(const std::filesystem::path& path);

/// `<scenario>_<env>_<doi-label>_<seed>` naming stem for result files.
std::string file_stem(const engine::SimResult& result);

}  // namespace sfgame::metrics
