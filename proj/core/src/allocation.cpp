#include "itsc/allocation.hpp"

#include <algorithm>
#include <stdexcept>

namespace itsc {

AllocationResult allocate(const std::vector<AllocationRequest>& requests,
                          double bw_total_bps)
{
    if (bw_total_bps <= 0.0)
        throw std::domain_error("allocate: bw_total must be > 0");

    std::vector<const AllocationRequest*> high;
    std::vector<const AllocationRequest*> low;
    for (const auto& r : requests)
        (r.tier == PriorityTier::High ? high : low).push_back(&r);
    std::sort(high.begin(), high.end(),
              [](const AllocationRequest* a, const AllocationRequest* b) {
                  return a->flow < b->flow;
              });

    AllocationResult res;
    double remaining = bw_total_bps;
    for (const AllocationRequest* r : high) {
        const double g = std::min(std::max(r->demand_bps, 0.0), remaining);
        res.grants_bps[r->flow] = g;
        remaining -= g;
        res.bw_h_bps += g;
    }

    res.low_flow_count = static_cast<int>(low.size());
    if (!low.empty()) {
        res.bw_l_bps = remaining / static_cast<double>(low.size());
        for (const AllocationRequest* r : low)
            res.grants_bps[r->flow] = std::min(std::max(r->demand_bps, 0.0), res.bw_l_bps);
    }
    return res;
}

}  // namespace itsc
