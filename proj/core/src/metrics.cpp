#include "itsc/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace itsc {

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(std::int64_t v)
{
    return std::to_string(v);
}

std::string fmt_opt(const std::optional<double>& v)
{
    return v ? fmt(*v) : std::string("na");
}

}  // namespace

const std::vector<std::string>& aggregated_metric_names()
{
    static const std::vector<std::string> names = {
        "generated",        "delivered",          "dropped_total",
        "packet_loss_pct",  "throughput_pct",     "throughput_bps",
        "energy_total_j",   "energy_avg_per_sbs_j", "ee_bits_per_joule",
    };
    return names;
}

std::optional<double> metric_value(const MetricsRow& row, const std::string& name)
{
    if (name == "generated") return static_cast<double>(row.generated);
    if (name == "delivered") return static_cast<double>(row.delivered);
    if (name == "dropped_total") return static_cast<double>(row.dropped_total);
    if (name == "packet_loss_pct") return row.packet_loss_pct;
    if (name == "throughput_pct") return row.throughput_pct;
    if (name == "throughput_bps") return row.throughput_bps;
    if (name == "energy_total_j") return row.energy_total_j;
    if (name == "energy_avg_per_sbs_j") return row.energy_avg_per_sbs_j;
    if (name == "ee_bits_per_joule") return row.ee_bits_per_joule;
    return std::nullopt;
}

MetricsRow compute_report(const RunTrace& trace)
{
    if (trace.outcome_count(PacketOutcome::Pending) != 0)
        throw std::invalid_argument("compute_report: trace has unresolved packets");

    MetricsRow row;
    row.strategy = trace.strategy;
    row.seed = trace.seed;
    row.generated = trace.generated();
    row.delivered = trace.delivered();
    row.dropped_queue_full = trace.outcome_count(PacketOutcome::DroppedQueueFull);
    row.dropped_no_attachment = trace.outcome_count(PacketOutcome::DroppedNoAttachment);
    row.dropped_sbs_slept = trace.outcome_count(PacketOutcome::DroppedSbsSlept);
    row.dropped_sim_end = trace.outcome_count(PacketOutcome::DroppedSimEnd);
    row.dropped_total = trace.dropped();

    if (row.generated > 0) {
        row.packet_loss_pct =
            100.0 * static_cast<double>(row.dropped_total) / static_cast<double>(row.generated);
        row.throughput_pct = 100.0 - row.packet_loss_pct;
    }

    const double tx_window_s = to_seconds(trace.tx_stop_us - trace.tx_start_us);
    row.delivered_bits = trace.delivered_bits;
    row.throughput_bps = tx_window_s > 0.0 ? trace.delivered_bits / tx_window_s : 0.0;

    row.energy_total_j = trace.energy.total_j;
    row.energy_backhaul_j = trace.energy.backhaul_j;
    row.energy_per_sbs_j = trace.energy.per_sbs_j;
    if (!trace.energy.per_sbs_j.empty()) {
        double sum = 0.0;
        for (const auto& [id, j] : trace.energy.per_sbs_j)
            sum += j;
        row.energy_avg_per_sbs_j = sum / static_cast<double>(trace.energy.per_sbs_j.size());
    }
    if (row.energy_total_j > 0.0)
        row.ee_bits_per_joule =
            energy_efficiency_bits_per_joule(trace.delivered_bits, row.energy_total_j);
    return row;
}

MetricsGroup aggregate_runs(const std::vector<MetricsRow>& rows)
{
    if (rows.empty())
        throw std::invalid_argument("aggregate_runs: needs at least one row");

    MetricsGroup group;
    group.strategy_label = to_string(rows.front().strategy);
    group.rows = rows;
    for (const auto& name : aggregated_metric_names()) {
        std::vector<double> values;
        for (const auto& r : rows)
            if (auto v = metric_value(r, name))
                values.push_back(*v);
        AggregateStat stat;
        stat.n = static_cast<int>(values.size());
        if (!values.empty()) {
            double sum = 0.0;
            for (double v : values)
                sum += v;
            stat.mean = sum / static_cast<double>(values.size());
            if (values.size() > 1) {
                double ss = 0.0;
                for (double v : values)
                    ss += (v - stat.mean) * (v - stat.mean);
                stat.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
            }
        }
        group.aggregate[name] = stat;
    }
    return group;
}

namespace {

std::vector<SbsId> sbs_columns(const MetricsReport& report)
{
    for (const auto& g : report.groups)
        for (const auto& r : g.rows) {
            std::vector<SbsId> ids;
            for (const auto& [id, j] : r.energy_per_sbs_j)
                ids.push_back(id);
            return ids;
        }
    return {};
}

void append_row_csv(std::string& out, const MetricsReport& report, const MetricsGroup& g,
                    const std::string& row_kind, const std::string& seed,
                    const MetricsRow* row, const std::vector<SbsId>& sbs_ids,
                    bool stddev_row = false)
{
    out += "1," + report.scenario_label + "," + g.strategy_label + "," + g.axis_label +
           "," + row_kind + "," + seed;
    if (row != nullptr) {
        out += "," + fmt(row->generated);
        out += "," + fmt(row->delivered);
        out += "," + fmt(row->dropped_total);
        out += "," + fmt(row->dropped_queue_full);
        out += "," + fmt(row->dropped_no_attachment);
        out += "," + fmt(row->dropped_sbs_slept);
        out += "," + fmt(row->dropped_sim_end);
        out += "," + fmt(row->packet_loss_pct);
        out += "," + fmt_opt(row->throughput_pct);
        out += "," + fmt(row->throughput_bps);
        out += "," + fmt(row->delivered_bits);
        out += "," + fmt(row->energy_total_j);
        out += "," + fmt(row->energy_backhaul_j);
        out += "," + fmt(row->energy_avg_per_sbs_j);
        out += "," + fmt_opt(row->ee_bits_per_joule);
        for (SbsId id : sbs_ids) {
            auto it = row->energy_per_sbs_j.find(id);
            out += ",";
            out += it == row->energy_per_sbs_j.end() ? "na" : fmt(it->second);
        }
    } else {
        // aggregate row: columns that have aggregates get values, others stay na
        auto stat_or_na = [&](const std::string& name) {
            auto it = g.aggregate.find(name);
            if (it == g.aggregate.end() || it->second.n == 0)
                return std::string("na");
            return fmt(stddev_row ? it->second.stddev : it->second.mean);
        };
        out += "," + stat_or_na("generated");
        out += "," + stat_or_na("delivered");
        out += "," + stat_or_na("dropped_total");
        out += ",na,na,na,na";
        out += "," + stat_or_na("packet_loss_pct");
        out += "," + stat_or_na("throughput_pct");
        out += "," + stat_or_na("throughput_bps");
        out += ",na";
        out += "," + stat_or_na("energy_total_j");
        out += ",na";
        out += "," + stat_or_na("energy_avg_per_sbs_j");
        out += "," + stat_or_na("ee_bits_per_joule");
        for (std::size_t i = 0; i < sbs_ids.size(); ++i)
            out += ",na";
    }
    out += "\n";
}

}  // namespace

std::string render_csv(const MetricsReport& report)
{
    const std::vector<SbsId> sbs_ids = sbs_columns(report);
    std::string out =
        "schema_version,scenario,strategy,axis,row_kind,seed,generated,delivered,"
        "dropped_total,dropped_queue_full,dropped_no_attachment,dropped_sbs_slept,"
        "dropped_sim_end,packet_loss_pct,throughput_pct,throughput_bps,delivered_bits,"
        "energy_total_j,energy_backhaul_j,energy_avg_per_sbs_j,ee_bits_per_joule";
    for (SbsId id : sbs_ids)
        out += ",energy_sbs_" + std::to_string(id) + "_j";
    out += "\n";

    for (const auto& g : report.groups) {
        for (const auto& r : g.rows)
            append_row_csv(out, report, g, "seed", std::to_string(r.seed), &r, sbs_ids);
        append_row_csv(out, report, g, "mean", "", nullptr, sbs_ids, false);
        append_row_csv(out, report, g, "stddev", "", nullptr, sbs_ids, true);
    }
    return out;
}

std::string render_json(const MetricsReport& report)
{
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["scenario"] = report.scenario_label;
    doc["groups"] = nlohmann::ordered_json::array();
    for (const auto& g : report.groups) {
        nlohmann::ordered_json jg;
        jg["strategy"] = g.strategy_label;
        jg["axis"] = g.axis_label;
        jg["per_seed"] = nlohmann::ordered_json::array();
        for (const auto& r : g.rows) {
            nlohmann::ordered_json jr;
            jr["seed"] = r.seed;
            jr["generated"] = r.generated;
            jr["delivered"] = r.delivered;
            jr["dropped_total"] = r.dropped_total;
            jr["dropped_queue_full"] = r.dropped_queue_full;
            jr["dropped_no_attachment"] = r.dropped_no_attachment;
            jr["dropped_sbs_slept"] = r.dropped_sbs_slept;
            jr["dropped_sim_end"] = r.dropped_sim_end;
            jr["packet_loss_pct"] = r.packet_loss_pct;
            if (r.throughput_pct)
                jr["throughput_pct"] = *r.throughput_pct;
            else
                jr["throughput_pct"] = nullptr;
            jr["throughput_bps"] = r.throughput_bps;
            jr["delivered_bits"] = r.delivered_bits;
            jr["energy_total_j"] = r.energy_total_j;
            jr["energy_backhaul_j"] = r.energy_backhaul_j;
            jr["energy_avg_per_sbs_j"] = r.energy_avg_per_sbs_j;
            if (r.ee_bits_per_joule)
                jr["ee_bits_per_joule"] = *r.ee_bits_per_joule;
            else
                jr["ee_bits_per_joule"] = nullptr;
            nlohmann::ordered_json je;
            for (const auto& [id, j] : r.energy_per_sbs_j)
                je[std::to_string(id)] = j;
            jr["energy_per_sbs_j"] = je;
            jg["per_seed"].push_back(jr);
        }
        nlohmann::ordered_json ja;
        for (const auto& name : aggregated_metric_names()) {
            auto it = g.aggregate.find(name);
            if (it == g.aggregate.end())
                continue;
            if (it->second.n == 0) {
                ja[name] = nullptr;
            } else {
                ja[name] = {{"mean", it->second.mean}, {"stddev", it->second.stddev}};
            }
        }
        jg["aggregate"] = ja;
        doc["groups"].push_back(jg);
    }
    return doc.dump(2) + "\n";
}

std::string render_plot_data(const MetricsReport& report)
{
    static const char* plot_metrics[] = {"packet_loss_pct", "energy_total_j",
                                         "throughput_pct"};
    std::string out = "group\tmetric\tmean\tstddev\n";
    for (const auto& g : report.groups) {
        std::string label = g.strategy_label;
        if (!g.axis_label.empty())
            label += "@" + g.axis_label;
        for (const char* m : plot_metrics) {
            auto it = g.aggregate.find(m);
            out += label;
            out += "\t";
            out += m;
            if (it != g.aggregate.end() && it->second.n > 0) {
                out += "\t" + fmt(it->second.mean) + "\t" + fmt(it->second.stddev);
            } else {
                out += "\tna\tna";
            }
            out += "\n";
        }
    }
    return out;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out)
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<std::string> export_report(const MetricsReport& report, ReportFormat format,
                                       const std::string& directory)
{
    std::filesystem::path dir(directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + directory +
                                 "': " + ec.message());

    std::vector<std::string> written;
    if (format == ReportFormat::Csv || format == ReportFormat::Both) {
        const auto p = dir / "report.csv";
        write_atomic(p, render_csv(report));
        written.push_back(p.string());
    }
    if (format == ReportFormat::Json || format == ReportFormat::Both) {
        const auto p = dir / "report.json";
        write_atomic(p, render_json(report));
        written.push_back(p.string());
    }
    const auto plot = dir / "plotdata.tsv";
    write_atomic(plot, render_plot_data(report));
    written.push_back(plot.string());
    return written;
}

}  // namespace itsc
