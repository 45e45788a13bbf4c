#include "core/engine.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <sstream>

#include "core/errors.hpp"

namespace hysim {

namespace {

struct InFlight {
    Cycle completion;
    std::uint64_t seq;
    QueueEntry entry;
    RouteInfo route;
    RowOutcome outcome;
    Cycle dispatch;

    bool operator>(const InFlight& other) const {
        if (completion != other.completion) return completion > other.completion;
        return seq > other.seq;
    }
};

struct CoreCursor {
    std::size_t next = 0;     // next request to issue
    Cycle next_arrival = 0;
    bool in_flight = false;
    bool exhausted = false;
};

} // namespace

double core_ipc(const CoreTally& core) {
    if (core.cycles == 0) throw ValidationError("IPC undefined: core retired no requests");
    return static_cast<double>(core.instructions) / static_cast<double>(core.cycles);
}

RunTally run(const std::vector<std::vector<MemoryRequest>>& per_core_traces, const Topology& topo,
             const TimingParams& timing, const EnergyParams& energy, PolicyKind policy_kind,
             const PolicySettings& policy_settings, const EngineOptions& options) {
    topo.validate();
    timing.validate();
    energy.validate();
    policy_settings.validate();
    if (per_core_traces.empty()) throw ValidationError("run.cores: no traces supplied");
    if (options.interval_length == 0)
        throw ValidationError("policy.interval_scale: interval length rounds to zero cycles");
    for (std::size_t c = 0; c < per_core_traces.size(); ++c) {
        if (per_core_traces[c].empty()) {
            std::ostringstream os;
            os << "trace: core " << c << " has an empty trace";
            throw ValidationError(os.str());
        }
        for (const auto& req : per_core_traces[c])
            map_address(req.address, topo); // throws on out-of-range addresses
    }

    const std::uint32_t num_cores = static_cast<std::uint32_t>(per_core_traces.size());
    const bool hybrid = options.mode == SystemMode::Hybrid;

    MemoryController ctrl(topo, timing, options.mode);
    if (options.warm_start) ctrl.warm_open(per_core_traces);
    PlacementPolicy policy(policy_kind, policy_settings);

    RunTally tally;
    tally.cores.resize(num_cores);

    std::vector<CoreCursor> cores(num_cores);
    for (std::uint32_t c = 0; c < num_cores; ++c)
        cores[c].next_arrival = per_core_traces[c][0].compute_gap;

    std::priority_queue<InFlight, std::vector<InFlight>, std::greater<InFlight>> in_flight;
    std::priority_queue<Cycle, std::vector<Cycle>, std::greater<Cycle>> wakeups;
    std::uint64_t flight_seq = 0;
    Cycle next_boundary = options.interval_length;
    std::uint64_t interval_index = 0;
    Cycle interval_migration_cycles = 0;
    Cycle last_t = 0;

    auto issuable = [&](const CoreCursor& core) {
        return !core.in_flight && !core.exhausted &&
               (options.run_length == 0 || core.next_arrival < options.run_length);
    };

    while (true) {
        bool demand_work = !ctrl.queue_empty() || !in_flight.empty();
        for (const auto& core : cores) demand_work = demand_work || issuable(core);

        // Earliest next event.
        bool have_t = false;
        Cycle t = 0;
        auto consider = [&](Cycle candidate) {
            if (!have_t || candidate < t) {
                t = candidate;
                have_t = true;
            }
        };
        for (const auto& core : cores)
            if (issuable(core)) consider(core.next_arrival);
        if (!in_flight.empty()) consider(in_flight.top().completion);
        if (demand_work) {
            while (!wakeups.empty() && wakeups.top() <= last_t) wakeups.pop();
            if (!wakeups.empty()) consider(wakeups.top());
            if (hybrid) consider(next_boundary);
        }
        if (!have_t) break;

        // 1. Interval boundary.
        if (hybrid && t == next_boundary) {
            tally.intervals.push_back(
                policy.end_interval(interval_index++, timing, interval_migration_cycles));
            policy.reset_counters();
            interval_migration_cycles = 0;
            next_boundary += options.interval_length;
        }

        // 2. Completions.
        while (!in_flight.empty() && in_flight.top().completion == t) {
            const InFlight fl = in_flight.top();
            in_flight.pop();
            CoreCursor& core = cores[fl.entry.core];
            CoreTally& ct = tally.cores[fl.entry.core];
            core.in_flight = false;
            ++ct.requests;
            ++ct.instructions; // the memory instruction itself
            ct.cycles = t;
            ++tally.requests_completed;

            DeviceTally& dev = fl.route.device == Device::Dram ? tally.dram : tally.pcm;
            dev.latency_sum += t - fl.entry.arrival;

            const auto& trace = per_core_traces[fl.entry.core];
            core.next = fl.entry.index + 1;
            if (core.next < trace.size())
                core.next_arrival = t + trace[core.next].compute_gap;
            else
                core.exhausted = true;

            if (hybrid) {
                const PlacementDecision decision = policy.on_memory_access(
                    fl.entry.row, fl.route.device, fl.entry.kind, fl.outcome);
                if (decision == PlacementDecision::CacheRow) ctrl.request_migration(fl.entry.row);
            }
        }

        // 3. Arrivals.
        for (std::uint32_t c = 0; c < num_cores; ++c) {
            CoreCursor& core = cores[c];
            if (!issuable(core) || core.next_arrival > t) continue;
            const MemoryRequest& req = per_core_traces[c][core.next];
            const RowColumn rc = map_address(req.address, topo);
            ctrl.enqueue(c, static_cast<std::uint32_t>(core.next), rc.row, rc.column, req.kind,
                         core.next_arrival);
            tally.cores[c].instructions += req.compute_gap; // compute retired before the issue
            core.in_flight = true;
            ++tally.requests_issued;
        }

        // 4. Migrations.
        if (hybrid) {
            const auto records = ctrl.dispatch_migrations(t);
            for (const auto& rec : records) {
                ++tally.migrations;
                tally.migration_busy_cycles += rec.busy_cycles;
                interval_migration_cycles += rec.busy_cycles;
                tally.migration_energy += energy.e_migration;
                if (!rec.to_dram) ++tally.pcm_writeback_rows;
                if (options.collect_migration_log) tally.migration_log.push_back(rec);
            }
            policy.note_migrations(records.size());
        }

        // 5. Demand dispatch.
        while (auto idx = ctrl.schedule_next(t)) {
            const DispatchResult res = ctrl.dispatch(*idx, t);
            DeviceTally& dev = res.route.device == Device::Dram ? tally.dram : tally.pcm;
            if (res.outcome == RowOutcome::Hit) ++dev.row_hits;
            else ++dev.row_misses;
            if (res.entry.kind == AccessKind::Read) ++dev.reads;
            else ++dev.writes;
            dev.dynamic_energy += access_energy(res.route.device, res.entry.kind, res.outcome, energy);
            in_flight.push(InFlight{res.completion, flight_seq++, res.entry, res.route, res.outcome,
                                    res.dispatch});
            if (options.record_requests)
                tally.request_log.push_back(RequestRecord{res.entry.core, res.entry.index,
                                                          res.entry.row, res.entry.kind,
                                                          res.route.device, res.outcome,
                                                          res.entry.arrival, res.dispatch,
                                                          res.completion});
        }

        // Wake-up points for requests and migrations blocked on reservations.
        if (!ctrl.queue_empty())
            if (auto wk = ctrl.next_demand_opportunity(t)) wakeups.push(*wk);
        if (hybrid && ctrl.migrations_pending())
            if (auto wk = ctrl.next_migration_opportunity(t)) wakeups.push(*wk);

        last_t = t;
    }

    Cycle last_retirement = 0;
    for (const auto& ct : tally.cores) last_retirement = std::max(last_retirement, ct.cycles);
    tally.total_cycles = last_retirement;

    if (options.run_length == 0) assert(tally.requests_issued == tally.requests_completed);

    double static_per_cycle = 0.0;
    if (options.mode != SystemMode::AllPcm) static_per_cycle += energy.e_static_dram;
    if (options.mode != SystemMode::AllDram) static_per_cycle += energy.e_static_pcm;
    tally.static_energy = static_per_cycle * static_cast<double>(tally.total_cycles);
    return tally;
}

RunTally run_alone(const std::vector<MemoryRequest>& trace, const Topology& topo,
                   const TimingParams& timing, const EnergyParams& energy, PolicyKind policy,
                   const PolicySettings& policy_settings, const EngineOptions& options) {
    return run({trace}, topo, timing, energy, policy, policy_settings, options);
}

} // namespace hysim
