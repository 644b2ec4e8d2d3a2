#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsc/geometry.hpp"
#include "itsc/traffic.hpp"

namespace itsc {

using SbsId = std::int32_t;

struct SbsConfig {
    SbsId id = 0;
    Point2 position;
    double bw_total_bps = 0.0;
    double antenna_height_m = 10.0;

    friend bool operator==(const SbsConfig&, const SbsConfig&) = default;
};

struct UeConfig {
    UeId id = 0;
    /// Explicit start position. Empty means: drawn uniformly over the area
    /// from the UE's seeded stream, so the run seed fully determines it.
    std::optional<Point2> initial_position;
    double speed_min_mps = 0.0;
    double speed_max_mps = 0.0;
    double pause_s = 0.0;
    double antenna_height_m = 1.5;

    friend bool operator==(const UeConfig&, const UeConfig&) = default;
};

struct PowerProfile {
    double p_fixed_active_w = 0.0;   // constant draw while Active
    double p_sleep_w = 0.0;          // constant draw while Sleeping
    double p_dynamic_max_w = 0.0;    // additional draw at 100% load
    double pc_backhaul_w = 0.0;      // network-side constant term

    friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

/// Link-budget constants shared by all stations.
struct RadioParams {
    double tx_power_w = 0.1;
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double wavelength_m = 0.06;   // 5 GHz carrier

    friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct Scenario {
    std::string label = "custom";
    double area_width_m = 0.0;
    double area_height_m = 0.0;
    std::vector<SbsConfig> sbs_list;
    std::vector<UeConfig> ue_list;
    std::vector<FlowSpec> flows;
    PowerProfile power_profile;
    RadioParams radio;
    double sim_start_s = 0.0;
    double tx_start_s = 0.0;
    double tx_stop_s = 0.0;
    double sim_end_s = 0.0;
    double control_tick_s = 1.0;
    double mobility_tick_s = 0.1;
    std::vector<std::uint64_t> seeds;
    std::int64_t queue_limit_packets = 0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks every scenario invariant; throws ValidationError naming the
/// offending field on the first violation.
void validate_scenario(const Scenario& s);

/// Parses the documented key/section config format and validates the result.
/// Throws ParseError on malformed text, ValidationError on invariant breach.
Scenario load_scenario(const std::string& source);
Scenario load_scenario_file(const std::string& path);

/// Serializes to the canonical config text; load_scenario(save) round-trips.
std::string save_scenario(const Scenario& s);

/// Built-in replica of the reference experiment: 500x500 m, 5 fixed SBSs,
/// 10 UEs with seed-derived positions, tx window [10 s, 100 s), queue limit
/// 100, ten seeds, 50 Gbit/s per SBS, flows round-robin over the classes.
Scenario paper_default_scenario();

/// paper_default_scenario with per-SBS bandwidth lowered to 40 Mbit/s so the
/// bottleneck SBS oversubscribes; the preset behind the strategy comparisons.
Scenario stress_default_scenario();

}  // namespace itsc
