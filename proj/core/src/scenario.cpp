#include "itsc/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "itsc/kvconfig.hpp"

namespace itsc {

namespace {

constexpr int kSchemaVersion = 1;

[[noreturn]] void invalid(const std::string& field, const std::string& what)
{
    throw ValidationError(field + ": " + what);
}

double parse_double(const KvSection& sec, const std::string& key, const std::string& field)
{
    auto it = sec.values.find(key);
    if (it == sec.values.end())
        throw ParseError(field + ": missing key '" + key + "'");
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ParseError(field + ": value '" + it->second + "' is not a number");
    return v;
}

double parse_double_or(const KvSection& sec, const std::string& key,
                       const std::string& field, double fallback)
{
    return sec.has(key) ? parse_double(sec, key, field) : fallback;
}

std::int64_t parse_int(const KvSection& sec, const std::string& key, const std::string& field)
{
    auto it = sec.values.find(key);
    if (it == sec.values.end())
        throw ParseError(field + ": missing key '" + key + "'");
    char* end = nullptr;
    const long long v = std::strtoll(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw ParseError(field + ": value '" + it->second + "' is not an integer");
    return v;
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string section_field(const KvSection& sec)
{
    std::ostringstream os;
    os << "[" << sec.name;
    if (sec.id >= 0)
        os << " " << sec.id;
    os << "]";
    return os.str();
}

}  // namespace

void validate_scenario(const Scenario& s)
{
    if (s.area_width_m <= 0.0)
        invalid("area.width_m", "must be > 0");
    if (s.area_height_m <= 0.0)
        invalid("area.height_m", "must be > 0");
    if (!(s.sim_start_s <= s.tx_start_s))
        invalid("time.tx_start_s", "must be >= sim_start_s");
    if (!(s.tx_start_s < s.tx_stop_s))
        invalid("time.tx_stop_s", "must be > tx_start_s");
    if (!(s.tx_stop_s <= s.sim_end_s))
        invalid("time.sim_end_s", "must be >= tx_stop_s");
    if (s.control_tick_s <= 0.0)
        invalid("time.control_tick_s", "must be > 0");
    if (s.mobility_tick_s <= 0.0)
        invalid("time.mobility_tick_s", "must be > 0");
    if (s.seeds.empty())
        invalid("seeds.list", "must name at least one seed");
    if (s.queue_limit_packets <= 0)
        invalid("queue.limit_packets", "must be > 0");

    if (s.power_profile.p_fixed_active_w < 0.0 || s.power_profile.p_sleep_w < 0.0 ||
        s.power_profile.p_dynamic_max_w < 0.0 || s.power_profile.pc_backhaul_w < 0.0)
        invalid("power", "all power values must be >= 0");
    if (!(s.power_profile.p_sleep_w < s.power_profile.p_fixed_active_w))
        invalid("power.sleep_w", "must be < fixed_active_w");

    if (s.radio.tx_power_w <= 0.0 || s.radio.tx_gain <= 0.0 || s.radio.rx_gain <= 0.0 ||
        s.radio.wavelength_m <= 0.0)
        invalid("radio", "all radio parameters must be > 0");

    if (s.sbs_list.empty())
        invalid("sbs", "at least one SBS required");
    std::set<SbsId> sbs_ids;
    for (const auto& b : s.sbs_list) {
        const std::string field = "sbs " + std::to_string(b.id);
        if (!sbs_ids.insert(b.id).second)
            invalid(field, "duplicate SBS id");
        if (b.bw_total_bps <= 0.0)
            invalid(field + ".bw_total_bps", "must be > 0");
        if (b.antenna_height_m <= 0.0)
            invalid(field + ".antenna_height_m", "must be > 0");
        if (b.position.x_m < 0.0 || b.position.x_m > s.area_width_m ||
            b.position.y_m < 0.0 || b.position.y_m > s.area_height_m)
            invalid(field + ".position", "must lie inside the area");
    }

    std::set<UeId> ue_ids;
    for (const auto& u : s.ue_list) {
        const std::string field = "ue " + std::to_string(u.id);
        if (!ue_ids.insert(u.id).second)
            invalid(field, "duplicate UE id");
        if (u.speed_min_mps < 0.0)
            invalid(field + ".speed_min_mps", "must be >= 0");
        if (u.speed_max_mps < u.speed_min_mps)
            invalid(field + ".speed_max_mps", "must be >= speed_min_mps");
        if (u.pause_s < 0.0)
            invalid(field + ".pause_s", "must be >= 0");
        if (u.antenna_height_m <= 0.0)
            invalid(field + ".antenna_height_m", "must be > 0");
        if (u.initial_position) {
            if (u.initial_position->x_m < 0.0 || u.initial_position->x_m > s.area_width_m ||
                u.initial_position->y_m < 0.0 || u.initial_position->y_m > s.area_height_m)
                invalid(field + ".initial_position", "must lie inside the area");
        }
    }

    std::set<FlowId> flow_ids;
    for (const auto& f : s.flows) {
        const std::string field = "flow " + std::to_string(f.id);
        if (!flow_ids.insert(f.id).second)
            invalid(field, "duplicate flow id");
        if (f.packet_size_bytes <= 0)
            invalid(field + ".packet_size_bytes", "must be > 0");
        if (f.rate_pps <= 0.0)
            invalid(field + ".rate_pps", "must be > 0");
        if (!(f.start_s < f.stop_s))
            invalid(field + ".stop_s", "must be > start_s");
        if (ue_ids.count(f.source_ue) == 0)
            invalid(field + ".source_ue",
                    "UE " + std::to_string(f.source_ue) + " is not in the ue list");
    }
}

Scenario load_scenario(const std::string& source)
{
    const KvDocument doc = parse_kv(source);
    Scenario s;

    const KvSection* root = doc.find("");
    if (root == nullptr || !root->has("schema_version"))
        throw ParseError("schema_version: missing (expected 'schema_version = 1' before "
                         "the first section)");
    if (parse_int(*root, "schema_version", "schema_version") != kSchemaVersion)
        throw ParseError("schema_version: unsupported version '" +
                         root->values.at("schema_version") + "'");
    if (root->has("label"))
        s.label = root->values.at("label");

    const KvSection* area = doc.find("area");
    if (area == nullptr)
        throw ParseError("area: missing [area] section");
    s.area_width_m = parse_double(*area, "width_m", "area");
    s.area_height_m = parse_double(*area, "height_m", "area");

    const KvSection* time = doc.find("time");
    if (time == nullptr)
        throw ParseError("time: missing [time] section");
    s.sim_start_s = parse_double(*time, "sim_start_s", "time");
    s.tx_start_s = parse_double(*time, "tx_start_s", "time");
    s.tx_stop_s = parse_double(*time, "tx_stop_s", "time");
    s.sim_end_s = parse_double(*time, "sim_end_s", "time");
    s.control_tick_s = parse_double_or(*time, "control_tick_s", "time", 1.0);
    s.mobility_tick_s = parse_double_or(*time, "mobility_tick_s", "time", 0.1);

    const KvSection* queue = doc.find("queue");
    if (queue == nullptr)
        throw ParseError("queue: missing [queue] section");
    s.queue_limit_packets = parse_int(*queue, "limit_packets", "queue");

    const KvSection* seeds = doc.find("seeds");
    if (seeds == nullptr || !seeds->has("list"))
        throw ParseError("seeds.list: missing");
    {
        std::string text = seeds->values.at("list");
        std::replace(text.begin(), text.end(), ',', ' ');
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0')
                throw ParseError("seeds.list: '" + tok + "' is not an unsigned integer");
            s.seeds.push_back(v);
        }
    }

    const KvSection* power = doc.find("power");
    if (power == nullptr)
        throw ParseError("power: missing [power] section");
    s.power_profile.p_fixed_active_w = parse_double(*power, "fixed_active_w", "power");
    s.power_profile.p_sleep_w = parse_double(*power, "sleep_w", "power");
    s.power_profile.p_dynamic_max_w = parse_double(*power, "dynamic_max_w", "power");
    s.power_profile.pc_backhaul_w = parse_double_or(*power, "backhaul_w", "power", 0.0);

    if (const KvSection* radio = doc.find("radio")) {
        s.radio.tx_power_w = parse_double_or(*radio, "tx_power_w", "radio", s.radio.tx_power_w);
        s.radio.tx_gain = parse_double_or(*radio, "tx_gain", "radio", s.radio.tx_gain);
        s.radio.rx_gain = parse_double_or(*radio, "rx_gain", "radio", s.radio.rx_gain);
        s.radio.wavelength_m =
            parse_double_or(*radio, "wavelength_m", "radio", s.radio.wavelength_m);
    }

    for (const KvSection* sec : doc.find_all("sbs")) {
        const std::string field = section_field(*sec);
        if (sec->id < 0)
            throw ParseError(field + ": section needs an id, e.g. [sbs 1]");
        SbsConfig b;
        b.id = static_cast<SbsId>(sec->id);
        b.position.x_m = parse_double(*sec, "x_m", field);
        b.position.y_m = parse_double(*sec, "y_m", field);
        b.bw_total_bps = parse_double(*sec, "bw_total_bps", field);
        b.antenna_height_m = parse_double_or(*sec, "antenna_height_m", field, 10.0);
        s.sbs_list.push_back(b);
    }

    for (const KvSection* sec : doc.find_all("ue")) {
        const std::string field = section_field(*sec);
        if (sec->id < 0)
            throw ParseError(field + ": section needs an id, e.g. [ue 1]");
        UeConfig u;
        u.id = static_cast<UeId>(sec->id);
        if (sec->has("x_m") != sec->has("y_m"))
            throw ParseError(field + ": x_m and y_m must be given together");
        if (sec->has("x_m"))
            u.initial_position =
                Point2{parse_double(*sec, "x_m", field), parse_double(*sec, "y_m", field)};
        u.speed_min_mps = parse_double_or(*sec, "speed_min_mps", field, 0.0);
        u.speed_max_mps = parse_double_or(*sec, "speed_max_mps", field, 0.0);
        u.pause_s = parse_double_or(*sec, "pause_s", field, 0.0);
        u.antenna_height_m = parse_double_or(*sec, "antenna_height_m", field, 1.5);
        s.ue_list.push_back(u);
    }

    for (const KvSection* sec : doc.find_all("flow")) {
        const std::string field = section_field(*sec);
        if (sec->id < 0)
            throw ParseError(field + ": section needs an id, e.g. [flow 1]");
        FlowSpec f;
        f.id = static_cast<FlowId>(sec->id);
        auto it = sec->values.find("class");
        if (it == sec->values.end())
            throw ParseError(field + ": missing key 'class'");
        if (!traffic_class_from_string(it->second, f.traffic_class))
            throw ParseError(field + ": unknown class '" + it->second +
                             "' (expected video|voice|http|email)");
        f.packet_size_bytes = sec->has("packet_size_bytes")
                                  ? parse_int(*sec, "packet_size_bytes", field)
                                  : default_packet_bytes(f.traffic_class);
        f.rate_pps = parse_double(*sec, "rate_pps", field);
        f.source_ue = static_cast<UeId>(parse_int(*sec, "source_ue", field));
        f.start_s = parse_double(*sec, "start_s", field);
        f.stop_s = parse_double(*sec, "stop_s", field);
        s.flows.push_back(f);
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& s)
{
    std::ostringstream os;
    os << "schema_version = " << kSchemaVersion << "\n";
    os << "label = " << s.label << "\n\n";

    os << "[area]\n";
    os << "width_m = " << fmt_double(s.area_width_m) << "\n";
    os << "height_m = " << fmt_double(s.area_height_m) << "\n\n";

    os << "[time]\n";
    os << "sim_start_s = " << fmt_double(s.sim_start_s) << "\n";
    os << "tx_start_s = " << fmt_double(s.tx_start_s) << "\n";
    os << "tx_stop_s = " << fmt_double(s.tx_stop_s) << "\n";
    os << "sim_end_s = " << fmt_double(s.sim_end_s) << "\n";
    os << "control_tick_s = " << fmt_double(s.control_tick_s) << "\n";
    os << "mobility_tick_s = " << fmt_double(s.mobility_tick_s) << "\n\n";

    os << "[queue]\n";
    os << "limit_packets = " << s.queue_limit_packets << "\n\n";

    os << "[seeds]\n";
    os << "list =";
    for (auto v : s.seeds)
        os << " " << v;
    os << "\n\n";

    os << "[power]\n";
    os << "fixed_active_w = " << fmt_double(s.power_profile.p_fixed_active_w) << "\n";
    os << "sleep_w = " << fmt_double(s.power_profile.p_sleep_w) << "\n";
    os << "dynamic_max_w = " << fmt_double(s.power_profile.p_dynamic_max_w) << "\n";
    os << "backhaul_w = " << fmt_double(s.power_profile.pc_backhaul_w) << "\n\n";

    os << "[radio]\n";
    os << "tx_power_w = " << fmt_double(s.radio.tx_power_w) << "\n";
    os << "tx_gain = " << fmt_double(s.radio.tx_gain) << "\n";
    os << "rx_gain = " << fmt_double(s.radio.rx_gain) << "\n";
    os << "wavelength_m = " << fmt_double(s.radio.wavelength_m) << "\n";

    for (const auto& b : s.sbs_list) {
        os << "\n[sbs " << b.id << "]\n";
        os << "x_m = " << fmt_double(b.position.x_m) << "\n";
        os << "y_m = " << fmt_double(b.position.y_m) << "\n";
        os << "bw_total_bps = " << fmt_double(b.bw_total_bps) << "\n";
        os << "antenna_height_m = " << fmt_double(b.antenna_height_m) << "\n";
    }

    for (const auto& u : s.ue_list) {
        os << "\n[ue " << u.id << "]\n";
        if (u.initial_position) {
            os << "x_m = " << fmt_double(u.initial_position->x_m) << "\n";
            os << "y_m = " << fmt_double(u.initial_position->y_m) << "\n";
        }
        os << "speed_min_mps = " << fmt_double(u.speed_min_mps) << "\n";
        os << "speed_max_mps = " << fmt_double(u.speed_max_mps) << "\n";
        os << "pause_s = " << fmt_double(u.pause_s) << "\n";
        os << "antenna_height_m = " << fmt_double(u.antenna_height_m) << "\n";
    }

    for (const auto& f : s.flows) {
        os << "\n[flow " << f.id << "]\n";
        os << "class = " << to_string(f.traffic_class) << "\n";
        os << "packet_size_bytes = " << f.packet_size_bytes << "\n";
        os << "rate_pps = " << fmt_double(f.rate_pps) << "\n";
        os << "source_ue = " << f.source_ue << "\n";
        os << "start_s = " << fmt_double(f.start_s) << "\n";
        os << "stop_s = " << fmt_double(f.stop_s) << "\n";
    }
    return os.str();
}

Scenario paper_default_scenario()
{
    Scenario s;
    s.label = "paper-default";
    s.area_width_m = 500.0;
    s.area_height_m = 500.0;
    s.sim_start_s = 0.0;
    s.tx_start_s = 10.0;
    s.tx_stop_s = 100.0;
    s.sim_end_s = 100.0;
    s.control_tick_s = 1.0;
    s.mobility_tick_s = 0.1;
    s.queue_limit_packets = 100;
    s.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    // Calibrated so a full run lands in single-digit joules; not physical
    // base-station figures.
    s.power_profile = PowerProfile{0.008, 0.001, 0.004, 0.0};

    // Area center plus the four midpoints between center and corners.
    const Point2 positions[5] = {
        {250.0, 250.0}, {125.0, 125.0}, {375.0, 125.0}, {125.0, 375.0}, {375.0, 375.0}};
    for (int i = 0; i < 5; ++i)
        s.sbs_list.push_back(SbsConfig{i + 1, positions[i], 50e9, 10.0});

    for (int i = 1; i <= 10; ++i) {
        UeConfig u;
        u.id = i;
        u.speed_min_mps = 0.5;
        u.speed_max_mps = 1.5;
        u.pause_s = 2.0;
        u.antenna_height_m = 1.5;
        s.ue_list.push_back(u);
    }

    // One flow per UE, classes assigned round-robin.
    const TrafficClass cycle[4] = {TrafficClass::Video, TrafficClass::Voice,
                                   TrafficClass::Http, TrafficClass::Email};
    for (int i = 1; i <= 10; ++i) {
        FlowSpec f;
        f.id = i;
        f.traffic_class = cycle[(i - 1) % 4];
        f.packet_size_bytes = default_packet_bytes(f.traffic_class);
        f.rate_pps = default_rate_pps(f.traffic_class);
        f.source_ue = i;
        f.start_s = 10.0;
        f.stop_s = 100.0;
        s.flows.push_back(f);
    }
    return s;
}

Scenario stress_default_scenario()
{
    Scenario s = paper_default_scenario();
    s.label = "stress-default";
    for (auto& b : s.sbs_list)
        b.bw_total_bps = 40e6;
    return s;
}

}  // namespace itsc
