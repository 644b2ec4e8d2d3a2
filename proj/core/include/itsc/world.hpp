#pragma once

#include <map>
#include <optional>
#include <vector>

#include "itsc/energy_model.hpp"
#include "itsc/mobility.hpp"
#include "itsc/queue.hpp"
#include "itsc/rng.hpp"
#include "itsc/sbs_state.hpp"
#include "itsc/scenario.hpp"

namespace itsc {

struct UeRuntime {
    const UeConfig* cfg = nullptr;
    UeState state;
    SeededRng rng;   // dedicated stream: trajectories never depend on anything else

    UeRuntime(const UeConfig* c, std::uint64_t stream_seed) : cfg(c), rng(stream_seed) {}
};

struct SbsRuntime {
    const SbsConfig* cfg = nullptr;
    SbsState state = SbsState::Active;
    std::vector<UeId> attached_ues;        // sorted ascending
    double cell_capacity_bps = 0.0;
    SbsQueue queue;
    std::map<FlowId, double> grants_bps;
    std::map<FlowId, FlowPipe> pipes;
    double interval_served_bits = 0.0;     // since the last energy accounting
};

/// Mutable state of one run. Owned by a single engine invocation; the
/// scenario it points at is immutable and may be shared across runs.
struct World {
    const Scenario* scenario = nullptr;
    TimeUs now_us = 0;
    std::vector<UeRuntime> ues;
    std::vector<SbsRuntime> sbss;
    EnergyAccount energy;

    SbsRuntime* find_sbs(SbsId id);
    UeRuntime* find_ue(UeId id);
    const FlowSpec* find_flow(FlowId id) const;
};

}  // namespace itsc
