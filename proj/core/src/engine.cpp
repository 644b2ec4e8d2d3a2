#include "itsc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <stdexcept>

namespace itsc {

const char* to_string(PacketOutcome o)
{
    switch (o) {
    case PacketOutcome::Pending: return "pending";
    case PacketOutcome::Delivered: return "delivered";
    case PacketOutcome::DroppedQueueFull: return "dropped_queue_full";
    case PacketOutcome::DroppedNoAttachment: return "dropped_no_attachment";
    case PacketOutcome::DroppedSbsSlept: return "dropped_sbs_slept";
    case PacketOutcome::DroppedSimEnd: return "dropped_sim_end";
    }
    return "pending";
}

std::int64_t RunTrace::outcome_count(PacketOutcome o) const
{
    std::int64_t n = 0;
    for (const auto& p : packets)
        if (p.outcome == o)
            ++n;
    return n;
}

std::vector<Arrival> arrival_schedule(const Scenario& scenario)
{
    std::vector<const FlowSpec*> flows;
    for (const auto& f : scenario.flows)
        flows.push_back(&f);
    std::sort(flows.begin(), flows.end(),
              [](const FlowSpec* a, const FlowSpec* b) { return a->id < b->id; });

    std::vector<Arrival> all;
    for (const FlowSpec* f : flows) {
        auto part = generate_arrivals(*f, scenario.sim_start_s, scenario.sim_end_s);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const Arrival& a, const Arrival& b) { return a.t_us < b.t_us; });
    return all;
}

namespace {

enum class EventKind { MobilityTick, ControlTick, PacketArrival, PacketDeparture, SimEnd };

struct Event {
    TimeUs t_us = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SimEnd;
    std::int64_t packet = -1;         // PacketArrival
    SbsId sbs = -1;                   // PacketDeparture
    FlowId flow = -1;                 // PacketDeparture
    std::uint64_t generation = 0;     // PacketDeparture
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const
    {
        if (a.t_us != b.t_us)
            return a.t_us > b.t_us;
        return a.seq > b.seq;
    }
};

class Engine {
public:
    Engine(const Scenario& sc, StrategyKind strategy, std::uint64_t seed,
           const RunOptions& options)
        : scenario_(sc), strategy_(strategy), options_(options)
    {
        trace_.scenario_label = sc.label;
        trace_.strategy = strategy;
        trace_.seed = seed;
        trace_.sim_start_us = to_us(sc.sim_start_s);
        trace_.sim_end_us = to_us(sc.sim_end_s);
        trace_.tx_start_us = to_us(sc.tx_start_s);
        trace_.tx_stop_us = to_us(sc.tx_stop_s);

        world_.scenario = &sc;
        world_.now_us = trace_.sim_start_us;
        for (const auto& ue : sc.ue_list) {
            world_.ues.emplace_back(&ue, derive_stream_seed(seed, static_cast<std::uint64_t>(ue.id)));
            world_.ues.back().state = init_ue_state(ue, sc.area_width_m, sc.area_height_m,
                                                    world_.ues.back().rng);
        }
        for (const auto& b : sc.sbs_list) {
            SbsRuntime rt;
            rt.cfg = &b;
            world_.sbss.push_back(std::move(rt));
        }
        for (const auto& f : sc.flows)
            flow_by_id_[f.id] = &f;
        last_energy_us_ = trace_.sim_start_us;
    }

    RunTrace run()
    {
        schedule_ticks();
        schedule_arrivals();
        schedule(trace_.sim_end_us, EventKind::SimEnd);

        while (!events_.empty()) {
            const Event ev = events_.top();
            events_.pop();
            if (ev.t_us < world_.now_us)
                throw std::logic_error("engine: event time regression");
            world_.now_us = ev.t_us;
            switch (ev.kind) {
            case EventKind::MobilityTick: on_mobility(ev); break;
            case EventKind::ControlTick: on_control(ev); break;
            case EventKind::PacketArrival: on_arrival(ev); break;
            case EventKind::PacketDeparture: on_departure(ev); break;
            case EventKind::SimEnd:
                on_sim_end(ev);
                return finish();
            }
        }
        throw std::logic_error("engine: event queue exhausted before sim end");
    }

private:
    void schedule(TimeUs t, EventKind kind, std::int64_t packet = -1, SbsId sbs = -1,
                  FlowId flow = -1, std::uint64_t generation = 0)
    {
        events_.push(Event{t, next_seq_++, kind, packet, sbs, flow, generation});
    }

    // Mobility and control ticks are laid out up front, mobility first at
    // shared instants, so same-time ordering never depends on runtime state.
    void schedule_ticks()
    {
        const TimeUs start = trace_.sim_start_us;
        const TimeUs end = trace_.sim_end_us;
        const TimeUs mt = to_us(scenario_.mobility_tick_s);
        const TimeUs ct = to_us(scenario_.control_tick_s);

        TimeUs next_mob = start + mt;
        TimeUs next_ctl = start;
        while (next_mob < end || next_ctl < end) {
            if (next_mob < end && next_mob <= next_ctl) {
                schedule(next_mob, EventKind::MobilityTick);
                next_mob += mt;
            } else {
                schedule(next_ctl, EventKind::ControlTick);
                next_ctl += ct;
            }
        }
    }

    void schedule_arrivals()
    {
        const auto all = arrival_schedule(scenario_);
        trace_.packets.reserve(all.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            trace_.packets.push_back(
                PacketRecord{all[i].flow, all[i].size_bytes, all[i].t_us});
            schedule(all[i].t_us, EventKind::PacketArrival, static_cast<std::int64_t>(i));
        }
    }

    void on_mobility(const Event& ev)
    {
        ++trace_.counts.mobility_ticks;
        const double dt_s = to_seconds(to_us(scenario_.mobility_tick_s));
        for (auto& ue : world_.ues) {
            ue.state = random_waypoint_step(ue.state, *ue.cfg, scenario_.area_width_m,
                                            scenario_.area_height_m, dt_s, ue.rng);
            if (options_.record_event_log)
                logf(ev, "ue_pos ue=%d x=%.6f y=%.6f", ue.cfg->id, ue.state.position.x_m,
                     ue.state.position.y_m);
        }
    }

    void on_control(const Event& ev)
    {
        ++trace_.counts.control_ticks;
        settle_all_pipes();
        account_energy();

        const TickResult result = strategy_tick(world_, strategy_);
        for (const auto& ch : result.changes) {
            trace_.transitions.push_back(SbsTransition{world_.now_us, ch.sbs, ch.from,
                                                       ch.to, ch.capacity_bps_at_decision});
            if (options_.record_event_log)
                logf(ev, "sbs_state sbs=%d %s->%s cc_bps=%.17g", ch.sbs,
                     to_string(ch.from), to_string(ch.to), ch.capacity_bps_at_decision);
        }
        for (const auto& p : result.slept_packets)
            resolve(p.packet_index, PacketOutcome::DroppedSbsSlept);

        if (options_.record_event_log) {
            for (const auto& ue : world_.ues)
                logf(ev, "assoc ue=%d sbs=%d", ue.cfg->id,
                     ue.state.attached_sbs ? *ue.state.attached_sbs : -1);
            for (const auto& sbs : world_.sbss)
                for (const auto& [flow, bps] : sbs.grants_bps)
                    logf(ev, "grant sbs=%d flow=%d bps=%.17g", sbs.cfg->id, flow, bps);
        }

        reconcile_pipes(ev);
    }

    void on_arrival(const Event& ev)
    {
        ++trace_.counts.arrivals;
        PacketRecord& rec = trace_.packets[ev.packet];
        const FlowSpec* flow = flow_by_id_.at(rec.flow);
        UeRuntime* ue = world_.find_ue(flow->source_ue);

        if (!ue->state.attached_sbs) {
            resolve(ev.packet, PacketOutcome::DroppedNoAttachment);
            if (options_.record_event_log)
                logf(ev, "arrival pkt=%lld flow=%d sbs=-1 outcome=%s",
                     static_cast<long long>(ev.packet), rec.flow, to_string(rec.outcome));
            return;
        }
        SbsRuntime& sbs = *world_.find_sbs(*ue->state.attached_sbs);
        rec.sbs = sbs.cfg->id;

        if (sbs.state == SbsState::Sleeping) {
            resolve(ev.packet, PacketOutcome::DroppedSbsSlept);
        } else if (!sbs.queue.accepts(scenario_.queue_limit_packets)) {
            resolve(ev.packet, PacketOutcome::DroppedQueueFull);
        } else {
            sbs.queue.push(QueuedPacket{ev.packet, rec.flow, rec.size_bytes,
                                        classify_priority(rec.size_bytes), ev.t_us});
            trace_.max_queue_waiting =
                std::max(trace_.max_queue_waiting, sbs.queue.waiting_count());
            try_start_flow(sbs, rec.flow);
        }
        if (options_.record_event_log)
            logf(ev, "arrival pkt=%lld flow=%d sbs=%d outcome=%s",
                 static_cast<long long>(ev.packet), rec.flow, sbs.cfg->id,
                 rec.outcome == PacketOutcome::Pending ? "queued" : to_string(rec.outcome));
    }

    void on_departure(const Event& ev)
    {
        SbsRuntime* sbs = world_.find_sbs(ev.sbs);
        if (sbs == nullptr)
            return;
        auto it = sbs->pipes.find(ev.flow);
        if (it == sbs->pipes.end() || it->second.generation != ev.generation ||
            !it->second.current)
            return;   // superseded by a reschedule, a sleep flush, or a wake

        FlowPipe& pipe = it->second;
        settle_pipe(*sbs, pipe);
        if (pipe.remaining_bits > 0.0)
            throw std::logic_error("engine: departure fired before transmission finished");

        ++trace_.counts.departures;
        deliver(*sbs, pipe, ev);
        try_start_flow(*sbs, ev.flow);
    }

    void on_sim_end(const Event& ev)
    {
        settle_all_pipes();
        account_energy();
        std::int64_t flushed = 0;
        for (auto& sbs : world_.sbss) {
            for (auto& [flow, pipe] : sbs.pipes) {
                if (pipe.current) {
                    resolve(pipe.current->packet_index, PacketOutcome::DroppedSimEnd);
                    pipe.current.reset();
                    ++flushed;
                }
            }
            sbs.pipes.clear();
            for (const auto& p : sbs.queue.drain()) {
                resolve(p.packet_index, PacketOutcome::DroppedSimEnd);
                ++flushed;
            }
        }
        if (options_.record_event_log)
            logf(ev, "sim_end flushed=%lld", static_cast<long long>(flushed));
    }

    RunTrace finish()
    {
        for (const auto& p : trace_.packets)
            if (p.outcome == PacketOutcome::Pending)
                throw std::logic_error("engine: packet left unresolved at sim end");
        return std::move(trace_);
    }

    // --- transmission bookkeeping -------------------------------------

    /// Brings a pipe's transmission progress up to now, crediting served bits
    /// to the current energy-accounting interval.
    void settle_pipe(SbsRuntime& sbs, FlowPipe& pipe)
    {
        const TimeUs elapsed = world_.now_us - pipe.last_update_us;
        pipe.last_update_us = world_.now_us;
        if (!pipe.current || pipe.rate_bps <= 0.0 || elapsed <= 0)
            return;
        const double bits =
            std::min(pipe.remaining_bits, pipe.rate_bps * to_seconds(elapsed));
        pipe.remaining_bits -= bits;
        sbs.interval_served_bits += bits;
    }

    void settle_all_pipes()
    {
        for (auto& sbs : world_.sbss)
            for (auto& [flow, pipe] : sbs.pipes)
                settle_pipe(sbs, pipe);
    }

    /// Energy for [last accounting instant, now), using the states and the
    /// served bits of that interval. Called before states or grants change.
    void account_energy()
    {
        const TimeUs dt = world_.now_us - last_energy_us_;
        if (dt <= 0)
            return;
        const double dt_s = to_seconds(dt);
        std::vector<SbsEnergySample> samples;
        samples.reserve(world_.sbss.size());
        for (auto& sbs : world_.sbss) {
            const double capacity_bits = sbs.cfg->bw_total_bps * dt_s;
            const double load =
                capacity_bits > 0.0
                    ? std::min(1.0, sbs.interval_served_bits / capacity_bits)
                    : 0.0;
            samples.push_back(SbsEnergySample{sbs.cfg->id, sbs.state, load});
            sbs.interval_served_bits = 0.0;
        }
        accumulate(world_.energy, samples, dt_s, scenario_.power_profile);
        last_energy_us_ = world_.now_us;
        trace_.energy = world_.energy;
    }

    /// After a control tick: apply new grants to in-flight transmissions
    /// (preemption-free recompute) and start whatever can start.
    void reconcile_pipes(const Event& ev)
    {
        for (auto& sbs : world_.sbss) {
            if (sbs.state == SbsState::Sleeping)
                continue;

            for (auto it = sbs.pipes.begin(); it != sbs.pipes.end();) {
                FlowPipe& pipe = it->second;
                if (!pipe.current) {
                    it = sbs.pipes.erase(it);
                    continue;
                }
                if (pipe.remaining_bits <= 0.0) {
                    // finished exactly at this tick; complete it here
                    ++trace_.counts.departures;
                    deliver(sbs, pipe, ev);
                    it = sbs.pipes.erase(it);
                    continue;
                }
                pipe.rate_bps = grant_of(sbs, it->first);
                pipe.generation = ++next_generation_;
                if (pipe.rate_bps > 0.0)
                    schedule_departure(sbs, it->first, pipe);
                ++it;
            }
            start_waiting(sbs);
        }
    }

    double grant_of(const SbsRuntime& sbs, FlowId flow) const
    {
        auto it = sbs.grants_bps.find(flow);
        return it == sbs.grants_bps.end() ? 0.0 : it->second;
    }

    void schedule_departure(SbsRuntime& sbs, FlowId flow, FlowPipe& pipe)
    {
        const double tx_us_exact = pipe.remaining_bits * 1e6 / pipe.rate_bps;
        const TimeUs done = world_.now_us + static_cast<TimeUs>(std::ceil(tx_us_exact));
        schedule(done, EventKind::PacketDeparture, -1, sbs.cfg->id, flow,
                 pipe.generation);
    }

    /// Starts the next waiting packet of one flow if its pipe is free and it
    /// has a positive grant.
    void try_start_flow(SbsRuntime& sbs, FlowId flow)
    {
        auto pipe_it = sbs.pipes.find(flow);
        if (pipe_it != sbs.pipes.end() && pipe_it->second.current)
            return;
        const double rate = grant_of(sbs, flow);
        if (rate <= 0.0 || !sbs.queue.has_waiting(flow))
            return;
        FlowPipe& pipe = sbs.pipes[flow];
        pipe.current = sbs.queue.pop_front_of(flow);
        pipe.remaining_bits = static_cast<double>(pipe.current->size_bytes) * 8.0;
        pipe.rate_bps = rate;
        pipe.last_update_us = world_.now_us;
        pipe.generation = ++next_generation_;
        schedule_departure(sbs, flow, pipe);
    }

    /// Starts service for every flow that can proceed, High tier first.
    void start_waiting(SbsRuntime& sbs)
    {
        for (FlowId flow : sbs.queue.flows_by_service_priority())
            try_start_flow(sbs, flow);
    }

    void deliver(SbsRuntime& sbs, FlowPipe& pipe, const Event& ev)
    {
        const std::int64_t idx = pipe.current->packet_index;
        PacketRecord& rec = trace_.packets[idx];
        rec.outcome = PacketOutcome::Delivered;
        rec.departure_us = world_.now_us;
        trace_.delivered_bits += static_cast<double>(rec.size_bytes) * 8.0;
        pipe.current.reset();
        if (options_.record_event_log)
            logf(ev, "depart pkt=%lld flow=%d sbs=%d", static_cast<long long>(idx),
                 rec.flow, sbs.cfg->id);
    }

    void resolve(std::int64_t packet_index, PacketOutcome outcome)
    {
        PacketRecord& rec = trace_.packets[packet_index];
        if (rec.outcome != PacketOutcome::Pending)
            throw std::logic_error("engine: packet resolved twice");
        rec.outcome = outcome;
    }

    template <typename... Args>
    void logf(const Event& ev, const char* fmt, Args... args)
    {
        char buf[192];
        const int head = std::snprintf(buf, sizeof(buf), "%lld %llu ",
                                       static_cast<long long>(ev.t_us),
                                       static_cast<unsigned long long>(ev.seq));
        std::snprintf(buf + head, sizeof(buf) - head, fmt, args...);
        trace_.event_log += buf;
        trace_.event_log += '\n';
    }

    const Scenario& scenario_;
    StrategyKind strategy_;
    RunOptions options_;
    World world_;
    RunTrace trace_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_generation_ = 0;
    std::map<FlowId, const FlowSpec*> flow_by_id_;
    TimeUs last_energy_us_ = 0;
};

}  // namespace

RunTrace run_simulation(const Scenario& scenario, StrategyKind strategy,
                        std::uint64_t seed, const RunOptions& options)
{
    validate_scenario(scenario);
    Engine engine(scenario, strategy, seed, options);
    return engine.run();
}

}  // namespace itsc
