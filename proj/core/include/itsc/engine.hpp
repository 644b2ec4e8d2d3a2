#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "itsc/sleep_control.hpp"
#include "itsc/world.hpp"

namespace itsc {

enum class PacketOutcome {
    Pending,
    Delivered,
    DroppedQueueFull,
    DroppedNoAttachment,
    DroppedSbsSlept,
    DroppedSimEnd,
};

const char* to_string(PacketOutcome o);

struct PacketRecord {
    FlowId flow = 0;
    std::int64_t size_bytes = 0;
    TimeUs arrival_us = 0;
    PacketOutcome outcome = PacketOutcome::Pending;
    TimeUs departure_us = -1;    // set when Delivered
    SbsId sbs = -1;              // SBS that handled (or dropped) it, -1 if none
};

struct SbsTransition {
    TimeUs t_us = 0;
    SbsId sbs = 0;
    SbsState from = SbsState::Active;
    SbsState to = SbsState::Active;
    double capacity_bps_at_decision = 0.0;
};

struct EventCounts {
    std::uint64_t mobility_ticks = 0;
    std::uint64_t control_ticks = 0;
    std::uint64_t arrivals = 0;
    std::uint64_t departures = 0;
};

/// Complete, replayable record of one run.
struct RunTrace {
    std::string scenario_label;
    StrategyKind strategy = StrategyKind::Itsc;
    std::uint64_t seed = 0;
    TimeUs sim_start_us = 0;
    TimeUs sim_end_us = 0;
    TimeUs tx_start_us = 0;
    TimeUs tx_stop_us = 0;
    std::vector<PacketRecord> packets;
    EnergyAccount energy;
    std::vector<SbsTransition> transitions;
    EventCounts counts;
    double delivered_bits = 0.0;
    std::int64_t max_queue_waiting = 0;
    std::string event_log;   // populated when RunOptions.record_event_log

    std::int64_t generated() const { return static_cast<std::int64_t>(packets.size()); }
    std::int64_t outcome_count(PacketOutcome o) const;
    std::int64_t delivered() const { return outcome_count(PacketOutcome::Delivered); }
    std::int64_t dropped() const { return generated() - delivered(); }
};

struct RunOptions {
    bool record_event_log = false;
};

/// The full arrival schedule of a scenario: every flow's CBR train over
/// [sim_start, sim_end), sorted by timestamp (stable: ascending flow id at
/// equal times). Index i here is packet index i of the run.
std::vector<Arrival> arrival_schedule(const Scenario& scenario);

/// Executes one deterministic discrete-event run. Identical inputs give a
/// byte-identical trace. Throws ValidationError on an invalid scenario.
RunTrace run_simulation(const Scenario& scenario, StrategyKind strategy,
                        std::uint64_t seed, const RunOptions& options = {});

}  // namespace itsc
