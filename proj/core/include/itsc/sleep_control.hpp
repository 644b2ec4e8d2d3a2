#pragma once

#include <string>
#include <vector>

#include "itsc/allocation.hpp"
#include "itsc/world.hpp"

namespace itsc {

/// ITSC sleeps zero-capacity SBSs; the two always-on proxies stand in for the
/// baseline algorithms this simulator is compared against.
enum class StrategyKind {
    Itsc,                 // sleep control + two-tier priority grants
    AlwaysOnEqualShare,   // "eer-proxy": no sleep, tierless equal split
    AlwaysOnFifo,         // "nr-proxy": no sleep, grants in packet-arrival order
};

const char* to_string(StrategyKind k);
bool strategy_from_string(const std::string& s, StrategyKind& out);

struct StateChange {
    SbsId sbs = 0;
    SbsState from = SbsState::Active;
    SbsState to = SbsState::Active;
    double capacity_bps_at_decision = 0.0;
};

struct TickResult {
    std::vector<StateChange> changes;
    /// Packets flushed from SBSs that went to sleep (queue and in-flight).
    std::vector<QueuedPacket> slept_packets;
};

/// Summed offered load of flows whose source UE is attached to this SBS and
/// that are active at `at_s`.
double cell_capacity_bps(const SbsRuntime& sbs, const std::vector<FlowSpec>& flows,
                         double at_s);

/// Proposed state per SBS. ITSC: Active iff cell capacity > 0 (a Sleeping SBS
/// selected by a UE with active flows wakes through the same rule). The
/// always-on proxies keep every SBS Active.
std::vector<std::pair<SbsId, SbsState>> decide_states(const std::vector<SbsRuntime>& sbss,
                                                      StrategyKind strategy);

/// Per-flow grants for one SBS under the given strategy. The request set is
/// the flows active-and-attached here plus flows that still have packets
/// resident at this SBS; demand is the flow's offered rate.
std::map<FlowId, double> compute_grants(const SbsRuntime& sbs,
                                        const std::vector<FlowSpec>& flows, double at_s,
                                        StrategyKind strategy);

/// The per-tick control step: re-associate UEs, recompute capacities, apply
/// sleep/wake decisions, then recompute grants. Returns the applied state
/// changes and any packets dropped by SBSs that went to sleep; the engine
/// records those and reconciles transmissions with the new grants.
TickResult strategy_tick(World& world, StrategyKind strategy);

}  // namespace itsc
