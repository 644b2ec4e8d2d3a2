#include "cli_app.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itsc/engine.hpp"
#include "itsc/metrics.hpp"
#include "itsc/scenario.hpp"

namespace itsc {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string scenario_path;
    bool paper_default = false;
    bool stress_default = false;
    std::string seeds_text;
    std::string out_dir;
    std::string format = "both";
    bool trace = false;
};

void add_scenario_flags(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--scenario", o.scenario_path, "Path to a scenario config file");
    cmd->add_flag("--paper-default", o.paper_default, "Use the built-in default scenario");
    cmd->add_flag("--stress-default", o.stress_default,
                  "Use the built-in oversubscribed stress scenario");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--seeds", o.seeds_text, "Comma-separated seed list override");
    cmd->add_option("--out", o.out_dir,
                    "Output directory (default: $ITSC_SIM_OUT or ./itsc-out)");
    cmd->add_option("--format", o.format, "Report format: csv|json|both (default both)");
    cmd->add_flag("--trace", o.trace, "Dump a per-run event log next to the reports");
}

Scenario resolve_scenario(const CommonOpts& o)
{
    const int sources = static_cast<int>(!o.scenario_path.empty()) +
                        static_cast<int>(o.paper_default) +
                        static_cast<int>(o.stress_default);
    if (sources == 0)
        throw UsageError("a scenario is required: --scenario PATH, --paper-default or "
                         "--stress-default");
    if (sources > 1)
        throw UsageError("give exactly one of --scenario, --paper-default, "
                         "--stress-default");
    if (o.paper_default)
        return paper_default_scenario();
    if (o.stress_default)
        return stress_default_scenario();
    return load_scenario_file(o.scenario_path);
}

std::vector<std::uint64_t> resolve_seeds(const CommonOpts& o, const Scenario& sc)
{
    if (o.seeds_text.empty())
        return sc.seeds;
    std::vector<std::uint64_t> seeds;
    std::string text = o.seeds_text;
    for (auto& c : text)
        if (c == ',')
            c = ' ';
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0')
            throw UsageError("--seeds: '" + tok + "' is not an unsigned integer");
        seeds.push_back(v);
    }
    if (seeds.empty())
        throw UsageError("--seeds: empty seed list");
    return seeds;
}

ReportFormat resolve_format(const CommonOpts& o)
{
    if (o.format == "csv")
        return ReportFormat::Csv;
    if (o.format == "json")
        return ReportFormat::Json;
    if (o.format == "both")
        return ReportFormat::Both;
    throw UsageError("--format: expected csv, json or both, got '" + o.format + "'");
}

std::string resolve_out_dir(const CommonOpts& o)
{
    if (!o.out_dir.empty())
        return o.out_dir;
    if (const char* env = std::getenv("ITSC_SIM_OUT"); env != nullptr && *env != '\0')
        return env;
    return "itsc-out";
}

std::vector<StrategyKind> parse_strategies(const std::string& text)
{
    std::vector<StrategyKind> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        StrategyKind k;
        if (!strategy_from_string(item, k))
            throw UsageError("unknown strategy '" + item +
                             "' (expected itsc, eer-proxy or nr-proxy)");
        out.push_back(k);
    }
    return out;
}

void write_trace_file(const std::filesystem::path& dir, const RunTrace& trace)
{
    const auto path = dir / ("trace_" + std::string(to_string(trace.strategy)) + "_" +
                             std::to_string(trace.seed) + ".log");
    const auto tmp = path.string() + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << trace.event_log;
    out.close();
    std::filesystem::rename(tmp, path);
}

MetricsGroup run_group(const Scenario& sc, StrategyKind strategy,
                       const std::vector<std::uint64_t>& seeds, bool trace,
                       const std::string& out_dir)
{
    std::vector<MetricsRow> rows;
    rows.reserve(seeds.size());
    RunOptions opts;
    opts.record_event_log = trace;
    for (auto seed : seeds) {
        RunTrace t = run_simulation(sc, strategy, seed, opts);
        if (trace) {
            std::filesystem::create_directories(out_dir);
            write_trace_file(out_dir, t);
        }
        rows.push_back(compute_report(t));
    }
    MetricsGroup g = aggregate_runs(rows);
    g.strategy_label = to_string(strategy);
    return g;
}

void print_group_summary(const MetricsGroup& g)
{
    const auto& agg = g.aggregate;
    auto mean_of = [&](const char* name) {
        auto it = agg.find(name);
        return it != agg.end() && it->second.n > 0 ? it->second.mean : 0.0;
    };
    std::printf("%-12s %-14s loss%%=%-8.4g thr%%=%-8.4g energy_j=%-10.6g ee_bits_per_j=%g\n",
                g.strategy_label.c_str(),
                g.axis_label.empty() ? "-" : g.axis_label.c_str(),
                mean_of("packet_loss_pct"), mean_of("throughput_pct"),
                mean_of("energy_total_j"), mean_of("ee_bits_per_joule"));
}

void finish_report(MetricsReport& report, const CommonOpts& opts)
{
    const std::string out_dir = resolve_out_dir(opts);
    const auto files = export_report(report, resolve_format(opts), out_dir);
    for (const auto& g : report.groups)
        print_group_summary(g);
    for (const auto& f : files)
        std::printf("wrote %s\n", f.c_str());
}

// --- sweep support -----------------------------------------------------

const std::map<std::string, std::string>& sweep_axes()
{
    static const std::map<std::string, std::string> axes = {
        {"bw_total_bps", "per-SBS bandwidth, bits/s (applied to every SBS)"},
        {"control_tick_s", "control tick period, seconds"},
        {"queue_limit_packets", "drop-tail queue limit, packets"},
        {"rate_scale", "multiplier applied to every flow's rate_pps"},
        {"ue_count", "keep only the first N UEs (and their flows)"},
    };
    return axes;
}

Scenario apply_axis(const Scenario& base, const std::string& axis, double value)
{
    Scenario sc = base;
    if (axis == "bw_total_bps") {
        for (auto& b : sc.sbs_list)
            b.bw_total_bps = value;
    } else if (axis == "control_tick_s") {
        sc.control_tick_s = value;
    } else if (axis == "queue_limit_packets") {
        sc.queue_limit_packets = static_cast<std::int64_t>(value);
    } else if (axis == "rate_scale") {
        for (auto& f : sc.flows)
            f.rate_pps *= value;
    } else if (axis == "ue_count") {
        const auto n = static_cast<std::size_t>(value);
        if (n == 0 || n > sc.ue_list.size())
            throw UsageError("ue_count must be within [1, " +
                             std::to_string(sc.ue_list.size()) + "] for this scenario");
        sc.ue_list.resize(n);
        std::vector<FlowSpec> kept;
        for (const auto& f : sc.flows)
            for (const auto& u : sc.ue_list)
                if (f.source_ue == u.id) {
                    kept.push_back(f);
                    break;
                }
        sc.flows = std::move(kept);
    } else {
        std::string msg = "unknown sweep axis '" + axis + "'; valid axes:";
        for (const auto& [name, help] : sweep_axes())
            msg += "\n  " + name + " - " + help;
        throw UsageError(msg);
    }
    validate_scenario(sc);
    return sc;
}

std::string axis_value_label(const std::string& axis, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.17g", axis.c_str(), value);
    return buf;
}

}  // namespace

int run_cli(int argc, const char* const* argv)
{
    CLI::App app{"itsc-sim: deterministic small-cell sleep-control and bandwidth "
                 "allocation simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string run_strategy = "itsc";
    CLI::App* cmd_run = app.add_subcommand("run", "Run one strategy over the seed list");
    add_scenario_flags(cmd_run, run_opts);
    cmd_run->add_option("--strategy", run_strategy, "itsc|eer-proxy|nr-proxy");
    add_output_flags(cmd_run, run_opts);

    CommonOpts cmp_opts;
    std::string cmp_strategies = "itsc,eer-proxy,nr-proxy";
    CLI::App* cmd_compare = app.add_subcommand(
        "compare", "Run several strategies on identical seeds and traffic");
    add_scenario_flags(cmd_compare, cmp_opts);
    cmd_compare->add_option("--strategies", cmp_strategies,
                            "Comma-separated strategy list (at least two)");
    add_output_flags(cmd_compare, cmp_opts);

    CommonOpts sweep_opts;
    std::string sweep_strategy = "itsc";
    std::string sweep_axis;
    std::string sweep_values;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Run one strategy across an axis of values");
    add_scenario_flags(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--strategy", sweep_strategy, "itsc|eer-proxy|nr-proxy");
    cmd_sweep->add_option("--sweep", sweep_axis, "Axis key (see docs)")->required();
    cmd_sweep->add_option("--values", sweep_values, "Comma-separated axis values")
        ->required();
    add_output_flags(cmd_sweep, sweep_opts);

    CommonOpts val_opts;
    bool val_print = false;
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "Check a scenario file and exit");
    add_scenario_flags(cmd_validate, val_opts);
    cmd_validate->add_flag("--print", val_print,
                           "Print the canonical serialized form on success");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_run->parsed()) {
            StrategyKind strategy;
            if (!strategy_from_string(run_strategy, strategy))
                throw UsageError("unknown strategy '" + run_strategy + "'");
            const Scenario sc = resolve_scenario(run_opts);
            const auto seeds = resolve_seeds(run_opts, sc);
            MetricsReport report;
            report.scenario_label = sc.label;
            report.groups.push_back(run_group(sc, strategy, seeds, run_opts.trace,
                                              resolve_out_dir(run_opts)));
            finish_report(report, run_opts);
        } else if (cmd_compare->parsed()) {
            const auto strategies = parse_strategies(cmp_strategies);
            if (strategies.size() < 2)
                throw UsageError("compare needs at least two strategies");
            const Scenario sc = resolve_scenario(cmp_opts);
            const auto seeds = resolve_seeds(cmp_opts, sc);
            MetricsReport report;
            report.scenario_label = sc.label;
            for (StrategyKind k : strategies)
                report.groups.push_back(
                    run_group(sc, k, seeds, cmp_opts.trace, resolve_out_dir(cmp_opts)));
            finish_report(report, cmp_opts);
        } else if (cmd_sweep->parsed()) {
            StrategyKind strategy;
            if (!strategy_from_string(sweep_strategy, strategy))
                throw UsageError("unknown strategy '" + sweep_strategy + "'");
            std::vector<double> values;
            {
                std::string item;
                std::istringstream in(sweep_values);
                while (std::getline(in, item, ',')) {
                    char* end = nullptr;
                    const double v = std::strtod(item.c_str(), &end);
                    if (end == item.c_str() || *end != '\0')
                        throw UsageError("--values: '" + item + "' is not a number");
                    values.push_back(v);
                }
            }
            if (values.empty())
                throw UsageError("--values: empty value list");
            const Scenario base = resolve_scenario(sweep_opts);
            const auto seeds = resolve_seeds(sweep_opts, base);
            MetricsReport report;
            report.scenario_label = base.label;
            for (double v : values) {
                const Scenario sc = apply_axis(base, sweep_axis, v);
                MetricsGroup g = run_group(sc, strategy, seeds, sweep_opts.trace,
                                           resolve_out_dir(sweep_opts));
                g.axis_label = axis_value_label(sweep_axis, v);
                report.groups.push_back(std::move(g));
            }
            finish_report(report, sweep_opts);
        } else if (cmd_validate->parsed()) {
            const Scenario sc = resolve_scenario(val_opts);
            validate_scenario(sc);
            if (val_print)
                std::fputs(save_scenario(sc).c_str(), stdout);
            else
                std::printf("OK: scenario '%s' is valid\n", sc.label.c_str());
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace itsc
