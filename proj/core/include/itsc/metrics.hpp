#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itsc/engine.hpp"

namespace itsc {

/// Metrics of one (strategy, seed) run.
struct MetricsRow {
    StrategyKind strategy = StrategyKind::Itsc;
    std::uint64_t seed = 0;
    std::int64_t generated = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped_total = 0;
    std::int64_t dropped_queue_full = 0;
    std::int64_t dropped_no_attachment = 0;
    std::int64_t dropped_sbs_slept = 0;
    std::int64_t dropped_sim_end = 0;
    /// 100 * dropped / generated; 0 for a zero-packet run.
    double packet_loss_pct = 0.0;
    /// 100 - packet_loss_pct (same value as 100 * delivered / generated, but
    /// written so the two percentages sum to 100 bit-exactly). Empty marks a
    /// zero-packet run where the ratio is undefined.
    std::optional<double> throughput_pct;
    double throughput_bps = 0.0;
    double delivered_bits = 0.0;
    double energy_total_j = 0.0;
    double energy_backhaul_j = 0.0;
    double energy_avg_per_sbs_j = 0.0;
    std::map<SbsId, double> energy_per_sbs_j;
    std::optional<double> ee_bits_per_joule;

    bool degenerate() const { return generated == 0; }
};

struct AggregateStat {
    double mean = 0.0;
    double stddev = 0.0;   // sample standard deviation; 0 for a single row
    int n = 0;             // rows the metric was defined on
};

/// Rows of one strategy (and, for sweeps, one axis value) plus their
/// aggregate statistics.
struct MetricsGroup {
    std::string strategy_label;
    std::string axis_label;   // empty outside sweeps
    std::vector<MetricsRow> rows;
    std::map<std::string, AggregateStat> aggregate;
};

struct MetricsReport {
    std::string scenario_label;
    std::vector<MetricsGroup> groups;
};

enum class ReportFormat { Csv, Json, Both };

/// Names of the metrics that get mean/stddev aggregates, in column order.
const std::vector<std::string>& aggregated_metric_names();

/// Reads one aggregated metric off a row; empty when undefined for that row.
std::optional<double> metric_value(const MetricsRow& row, const std::string& name);

/// Per-run metrics from a completed trace. Throws std::invalid_argument if
/// any packet is still unresolved.
MetricsRow compute_report(const RunTrace& trace);

/// Mean and sample standard deviation per metric; the rows are preserved.
/// Throws std::invalid_argument on empty input.
MetricsGroup aggregate_runs(const std::vector<MetricsRow>& rows);

std::string render_csv(const MetricsReport& report);
std::string render_json(const MetricsReport& report);
/// Plot-ready long format: one (group, metric, mean, stddev) line for the
/// loss / energy / throughput trio.
std::string render_plot_data(const MetricsReport& report);

/// Writes report.csv / report.json per `format`, plus plotdata.tsv, into
/// `directory` (created if absent). Files are written atomically and
/// byte-identically for identical reports. Throws std::runtime_error naming
/// the path on I/O failure.
std::vector<std::string> export_report(const MetricsReport& report, ReportFormat format,
                                       const std::string& directory);

}  // namespace itsc
