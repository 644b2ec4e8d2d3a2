#pragma once

#include <map>
#include <vector>

#include "itsc/traffic.hpp"

namespace itsc {

struct AllocationRequest {
    FlowId flow = 0;
    PriorityTier tier = PriorityTier::Low;
    double demand_bps = 0.0;
};

struct AllocationResult {
    std::map<FlowId, double> grants_bps;
    double bw_h_bps = 0.0;        // total granted to the High tier
    double bw_l_bps = 0.0;        // per-Low-flow share of the residual
    int low_flow_count = 0;
};

/// Two-tier bandwidth split. High flows are granted min(demand, remaining)
/// in ascending flow-id order; the residual is divided equally among Low
/// flows, each granted min(demand, residual / low_count). Sum of grants
/// never exceeds bw_total. Throws std::domain_error when bw_total <= 0.
AllocationResult allocate(const std::vector<AllocationRequest>& requests,
                          double bw_total_bps);

}  // namespace itsc
