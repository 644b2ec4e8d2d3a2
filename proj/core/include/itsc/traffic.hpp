#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "itsc/units.hpp"

namespace itsc {

using FlowId = std::int32_t;
using UeId = std::int32_t;

enum class TrafficClass { Video, Voice, Http, Email };

/// High tier carries the real-time classes (video, voice); Low everything else.
enum class PriorityTier { Low = 0, High = 1 };

/// Packet-size threshold separating the tiers: sizes >= this are High.
constexpr std::int64_t kHighTierThresholdBytes = 78022;

/// Default packet sizes per class, bytes.
constexpr std::int64_t kVideoPacketBytes = 84480;
constexpr std::int64_t kVoicePacketBytes = 78022;
constexpr std::int64_t kHttpPacketBytes = 1000;
constexpr std::int64_t kEmailPacketBytes = 500;

std::int64_t default_packet_bytes(TrafficClass c);

/// Default packet rates per class, packets/s. Calibration defaults for the
/// built-in scenarios; every scenario file may override them.
double default_rate_pps(TrafficClass c);

const char* to_string(TrafficClass c);
const char* to_string(PriorityTier t);
bool traffic_class_from_string(const std::string& s, TrafficClass& out);

/// One constant-bit-rate traffic source, anchored to a UE.
struct FlowSpec {
    FlowId id = 0;
    TrafficClass traffic_class = TrafficClass::Email;
    std::int64_t packet_size_bytes = kEmailPacketBytes;
    double rate_pps = 0.0;
    UeId source_ue = 0;
    double start_s = 0.0;
    double stop_s = 0.0;

    bool active_at(double at_s) const { return at_s >= start_s && at_s < stop_s; }
    double offered_bps() const { return static_cast<double>(packet_size_bytes) * 8.0 * rate_pps; }

    friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

struct Arrival {
    TimeUs t_us = 0;
    FlowId flow = 0;
    std::int64_t size_bytes = 0;
};

/// Tier of a packet by size: High iff size >= 78022 bytes, else Low.
/// Throws std::domain_error for a non-positive size.
PriorityTier classify_priority(std::int64_t packet_size_bytes);

/// Deterministic CBR schedule: arrivals at interval 1/rate starting at
/// max(flow.start_s, window_start_s), clipped to the flow's active window
/// and to [window_start_s, window_end_s). Timestamps strictly increase.
std::vector<Arrival> generate_arrivals(const FlowSpec& flow, double window_start_s,
                                       double window_end_s);

/// Sum of packet_size * 8 * rate over flows active at `at_s`, bits/s.
double offered_load_bps(const std::vector<FlowSpec>& flows, double at_s);

}  // namespace itsc
