#include "itsc/traffic.hpp"

#include <algorithm>
#include <stdexcept>

namespace itsc {

std::int64_t default_packet_bytes(TrafficClass c)
{
    switch (c) {
    case TrafficClass::Video: return kVideoPacketBytes;
    case TrafficClass::Voice: return kVoicePacketBytes;
    case TrafficClass::Http: return kHttpPacketBytes;
    case TrafficClass::Email: return kEmailPacketBytes;
    }
    return kEmailPacketBytes;
}

double default_rate_pps(TrafficClass c)
{
    switch (c) {
    case TrafficClass::Video: return 30.0;
    case TrafficClass::Voice: return 50.0;
    case TrafficClass::Http: return 10.0;
    case TrafficClass::Email: return 5.0;
    }
    return 5.0;
}

const char* to_string(TrafficClass c)
{
    switch (c) {
    case TrafficClass::Video: return "video";
    case TrafficClass::Voice: return "voice";
    case TrafficClass::Http: return "http";
    case TrafficClass::Email: return "email";
    }
    return "email";
}

const char* to_string(PriorityTier t)
{
    return t == PriorityTier::High ? "high" : "low";
}

bool traffic_class_from_string(const std::string& s, TrafficClass& out)
{
    if (s == "video") { out = TrafficClass::Video; return true; }
    if (s == "voice") { out = TrafficClass::Voice; return true; }
    if (s == "http")  { out = TrafficClass::Http;  return true; }
    if (s == "email") { out = TrafficClass::Email; return true; }
    return false;
}

PriorityTier classify_priority(std::int64_t packet_size_bytes)
{
    if (packet_size_bytes <= 0)
        throw std::domain_error("classify_priority: packet size must be positive");
    return packet_size_bytes >= kHighTierThresholdBytes ? PriorityTier::High
                                                        : PriorityTier::Low;
}

std::vector<Arrival> generate_arrivals(const FlowSpec& flow, double window_start_s,
                                       double window_end_s)
{
    std::vector<Arrival> out;
    if (flow.rate_pps <= 0.0)
        return out;

    const double first_s = std::max(flow.start_s, window_start_s);
    const double end_s = std::min(flow.stop_s, window_end_s);
    if (first_s >= end_s)
        return out;

    const TimeUs first_us = to_us(first_s);
    const TimeUs end_us = to_us(end_s);
    // Timestamps are computed per index, not accumulated, so rounding never drifts.
    for (std::int64_t k = 0;; ++k) {
        const TimeUs t = first_us + to_us(static_cast<double>(k) / flow.rate_pps);
        if (t >= end_us)
            break;
        out.push_back(Arrival{t, flow.id, flow.packet_size_bytes});
    }
    return out;
}

double offered_load_bps(const std::vector<FlowSpec>& flows, double at_s)
{
    double total = 0.0;
    for (const auto& f : flows)
        if (f.active_at(at_s))
            total += f.offered_bps();
    return total;
}

}  // namespace itsc
