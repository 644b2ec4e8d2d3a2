#include "itsc/sleep_control.hpp"

#include <algorithm>
#include <limits>

namespace itsc {

const char* to_string(StrategyKind k)
{
    switch (k) {
    case StrategyKind::Itsc: return "itsc";
    case StrategyKind::AlwaysOnEqualShare: return "eer-proxy";
    case StrategyKind::AlwaysOnFifo: return "nr-proxy";
    }
    return "itsc";
}

bool strategy_from_string(const std::string& s, StrategyKind& out)
{
    if (s == "itsc") { out = StrategyKind::Itsc; return true; }
    if (s == "eer-proxy") { out = StrategyKind::AlwaysOnEqualShare; return true; }
    if (s == "nr-proxy") { out = StrategyKind::AlwaysOnFifo; return true; }
    return false;
}

double cell_capacity_bps(const SbsRuntime& sbs, const std::vector<FlowSpec>& flows,
                         double at_s)
{
    double total = 0.0;
    for (const auto& f : flows) {
        if (!f.active_at(at_s))
            continue;
        if (std::binary_search(sbs.attached_ues.begin(), sbs.attached_ues.end(),
                               f.source_ue))
            total += f.offered_bps();
    }
    return total;
}

std::vector<std::pair<SbsId, SbsState>> decide_states(const std::vector<SbsRuntime>& sbss,
                                                      StrategyKind strategy)
{
    std::vector<std::pair<SbsId, SbsState>> out;
    out.reserve(sbss.size());
    for (const auto& sbs : sbss) {
        SbsState next = SbsState::Active;
        if (strategy == StrategyKind::Itsc)
            next = sbs.cell_capacity_bps > 0.0 ? SbsState::Active : SbsState::Sleeping;
        out.emplace_back(sbs.cfg->id, next);
    }
    return out;
}

namespace {

struct Request {
    FlowId flow;
    PriorityTier tier;
    double demand_bps;
    TimeUs oldest_resident_us;   // INT64_MAX when nothing is resident
};

std::vector<Request> build_requests(const SbsRuntime& sbs,
                                    const std::vector<FlowSpec>& flows, double at_s)
{
    std::vector<Request> out;
    for (const auto& f : flows) {
        const bool attached_active =
            f.active_at(at_s) && std::binary_search(sbs.attached_ues.begin(),
                                                    sbs.attached_ues.end(), f.source_ue);
        TimeUs oldest = std::numeric_limits<TimeUs>::max();
        auto pipe = sbs.pipes.find(f.id);
        if (pipe != sbs.pipes.end() && pipe->second.current)
            oldest = pipe->second.current->arrival_us;
        if (auto front = sbs.queue.front_arrival_of(f.id))
            oldest = std::min(oldest, *front);
        const bool resident = oldest != std::numeric_limits<TimeUs>::max();
        if (!attached_active && !resident)
            continue;
        out.push_back(Request{f.id, classify_priority(f.packet_size_bytes),
                              f.offered_bps(), oldest});
    }
    return out;
}

}  // namespace

std::map<FlowId, double> compute_grants(const SbsRuntime& sbs,
                                        const std::vector<FlowSpec>& flows, double at_s,
                                        StrategyKind strategy)
{
    const std::vector<Request> requests = build_requests(sbs, flows, at_s);
    const double bw = sbs.cfg->bw_total_bps;
    std::map<FlowId, double> grants;

    switch (strategy) {
    case StrategyKind::Itsc: {
        std::vector<AllocationRequest> reqs;
        reqs.reserve(requests.size());
        for (const auto& r : requests)
            reqs.push_back(AllocationRequest{r.flow, r.tier, r.demand_bps});
        grants = allocate(reqs, bw).grants_bps;
        break;
    }
    case StrategyKind::AlwaysOnEqualShare: {
        if (!requests.empty()) {
            const double share = bw / static_cast<double>(requests.size());
            for (const auto& r : requests)
                grants[r.flow] = std::min(r.demand_bps, share);
        }
        break;
    }
    case StrategyKind::AlwaysOnFifo: {
        // First come, first served: demands are filled in order of each
        // flow's oldest resident packet, ignoring tiers.
        std::vector<const Request*> order;
        order.reserve(requests.size());
        for (const auto& r : requests)
            order.push_back(&r);
        std::sort(order.begin(), order.end(), [](const Request* a, const Request* b) {
            if (a->oldest_resident_us != b->oldest_resident_us)
                return a->oldest_resident_us < b->oldest_resident_us;
            return a->flow < b->flow;
        });
        double remaining = bw;
        for (const Request* r : order) {
            const double g = std::min(r->demand_bps, remaining);
            grants[r->flow] = g;
            remaining -= g;
        }
        break;
    }
    }
    return grants;
}

TickResult strategy_tick(World& world, StrategyKind strategy)
{
    const Scenario& sc = *world.scenario;
    const double at_s = to_seconds(world.now_us);
    TickResult result;

    // Association: strongest received power, recomputed from scratch.
    std::vector<Point2> positions;
    std::vector<double> heights;
    positions.reserve(world.ues.size());
    for (const auto& ue : world.ues) {
        positions.push_back(ue.state.position);
        heights.push_back(ue.cfg->antenna_height_m);
    }
    const auto assoc = associate_all(positions, heights, sc.sbs_list, sc.radio);

    for (auto& sbs : world.sbss)
        sbs.attached_ues.clear();
    for (std::size_t i = 0; i < world.ues.size(); ++i) {
        world.ues[i].state.attached_sbs = assoc[i];
        if (assoc[i])
            world.find_sbs(*assoc[i])->attached_ues.push_back(world.ues[i].cfg->id);
    }
    for (auto& sbs : world.sbss)
        std::sort(sbs.attached_ues.begin(), sbs.attached_ues.end());

    for (auto& sbs : world.sbss)
        sbs.cell_capacity_bps = cell_capacity_bps(sbs, sc.flows, at_s);

    for (const auto& [id, next] : decide_states(world.sbss, strategy)) {
        SbsRuntime& sbs = *world.find_sbs(id);
        if (next == sbs.state)
            continue;
        result.changes.push_back(
            StateChange{id, sbs.state, next, sbs.cell_capacity_bps});
        sbs.state = next;
        if (next == SbsState::Sleeping) {
            // Going to sleep drains nothing: resident packets are dropped.
            for (auto& [flow, pipe] : sbs.pipes) {
                if (pipe.current) {
                    result.slept_packets.push_back(*pipe.current);
                    pipe.current.reset();
                }
                pipe.generation++;
            }
            sbs.pipes.clear();
            for (const auto& p : sbs.queue.drain())
                result.slept_packets.push_back(p);
        }
    }

    for (auto& sbs : world.sbss) {
        if (sbs.state == SbsState::Sleeping)
            sbs.grants_bps.clear();
        else
            sbs.grants_bps = compute_grants(sbs, sc.flows, at_s, strategy);
    }
    return result;
}

SbsRuntime* World::find_sbs(SbsId id)
{
    for (auto& s : sbss)
        if (s.cfg->id == id)
            return &s;
    return nullptr;
}

UeRuntime* World::find_ue(UeId id)
{
    for (auto& u : ues)
        if (u.cfg->id == id)
            return &u;
    return nullptr;
}

const FlowSpec* World::find_flow(FlowId id) const
{
    for (const auto& f : scenario->flows)
        if (f.id == id)
            return &f;
    return nullptr;
}

}  // namespace itsc
