#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "itsc/traffic.hpp"
#include "itsc/units.hpp"

namespace itsc {

struct QueuedPacket {
    std::int64_t packet_index = 0;   // index into the run's packet records
    FlowId flow = 0;
    std::int64_t size_bytes = 0;
    PriorityTier tier = PriorityTier::Low;
    TimeUs arrival_us = 0;
};

/// Shared drop-tail waiting room of one SBS. Admission ignores tiers (accept
/// iff waiting < limit); packets wait FIFO per flow; when the engine must
/// choose which waiting packet starts transmission next, High-tier flows are
/// scanned before Low-tier ones.
class SbsQueue {
public:
    bool accepts(std::int64_t limit) const { return waiting_ < limit; }

    void push(const QueuedPacket& p)
    {
        per_flow_[p.flow].push_back(p);
        ++waiting_;
    }

    std::optional<QueuedPacket> pop_front_of(FlowId flow)
    {
        auto it = per_flow_.find(flow);
        if (it == per_flow_.end() || it->second.empty())
            return std::nullopt;
        QueuedPacket p = it->second.front();
        it->second.pop_front();
        if (it->second.empty())
            per_flow_.erase(it);
        --waiting_;
        return p;
    }

    /// Oldest waiting arrival of a flow, if any.
    std::optional<TimeUs> front_arrival_of(FlowId flow) const
    {
        auto it = per_flow_.find(flow);
        if (it == per_flow_.end() || it->second.empty())
            return std::nullopt;
        return it->second.front().arrival_us;
    }

    /// Flows that have waiting packets, High tier first, ascending flow id
    /// within a tier.
    std::vector<FlowId> flows_by_service_priority() const
    {
        std::vector<FlowId> high;
        std::vector<FlowId> low;
        for (const auto& [flow, q] : per_flow_) {
            if (q.empty())
                continue;
            (q.front().tier == PriorityTier::High ? high : low).push_back(flow);
        }
        high.insert(high.end(), low.begin(), low.end());
        return high;   // map iteration is already ascending by flow id
    }

    std::vector<QueuedPacket> drain()
    {
        std::vector<QueuedPacket> out;
        for (auto& [flow, q] : per_flow_)
            for (const auto& p : q)
                out.push_back(p);
        per_flow_.clear();
        waiting_ = 0;
        return out;
    }

    std::int64_t waiting_count() const { return waiting_; }
    bool has_waiting(FlowId flow) const { return front_arrival_of(flow).has_value(); }

private:
    std::map<FlowId, std::deque<QueuedPacket>> per_flow_;
    std::int64_t waiting_ = 0;
};

/// One flow's transmitter at an SBS: serves that flow's packets FIFO at the
/// flow's currently granted rate. The SBS capacity is partitioned across
/// pipes by the grants, so pipes run concurrently.
struct FlowPipe {
    std::optional<QueuedPacket> current;
    double remaining_bits = 0.0;
    double rate_bps = 0.0;
    TimeUs last_update_us = 0;
    std::uint64_t generation = 0;   // invalidates superseded departure events
};

}  // namespace itsc
