#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "core/device.hpp"
#include "core/remap.hpp"
#include "core/topology.hpp"
#include "core/trace.hpp"
#include "core/types.hpp"

namespace hysim {

struct QueueEntry {
    std::uint32_t core = 0;
    std::uint32_t index = 0; // position within the core's trace
    RowId row = 0;           // logical (PCM-space) row id
    std::uint64_t column = 0;
    AccessKind kind = AccessKind::Read;
    Cycle arrival = 0;
    std::uint64_t seq = 0;   // global enqueue order, FCFS tie-break
};

struct RouteInfo {
    Device device = Device::Pcm;
    RowId physical_row = 0; // DRAM slot id when routed to the cache
    BankLoc bank;
};

struct DispatchResult {
    QueueEntry entry;
    RouteInfo route;
    RowOutcome outcome = RowOutcome::Miss;
    Cycle dispatch = 0;
    Cycle completion = 0;
};

// One row transfer. A dirty eviction emits two records: the writeback
// (to_dram == false) followed by the fill. `dirty` flags dirty data on
// the move: always true for writebacks, the victim's state for fills.
struct MigrationRecord {
    Cycle cycle = 0;
    RowId row = 0;
    bool to_dram = true;
    std::optional<RowId> victim;
    bool dirty = false;
    Cycle busy_cycles = 0;
};

// Owns bank/channel reservations, the DRAM cache remap table, the demand
// queue and the migration queue. Scheduling is FR-FCFS: row buffer hits
// first, then oldest arrival, then lowest enqueue index.
//
// Dispatch model: a request may dispatch at cycle `t` when its bank is
// idle and the channel's reservation ends by `t + access_time`, so the
// line transfer slot [t + access_time, t + access_time + t_bus) follows
// every earlier grant. Bus grants are strictly in dispatch order; there
// is no backfill into earlier idle gaps.
class MemoryController {
public:
    MemoryController(const Topology& topo, const TimingParams& timing, SystemMode mode);

    // Pre-opens each bank's row buffer with the first row the traces
    // touch in it (cores scanned in id order). Models a warmed system.
    void warm_open(const std::vector<std::vector<MemoryRequest>>& traces);

    RouteInfo route(RowId row) const;

    void enqueue(std::uint32_t core, std::uint32_t index, RowId row, std::uint64_t column,
                 AccessKind kind, Cycle arrival);
    bool queue_empty() const { return queue_.empty(); }

    // FR-FCFS pick among currently dispatchable requests, or nothing.
    std::optional<std::size_t> schedule_next(Cycle now) const;
    DispatchResult dispatch(std::size_t queue_index, Cycle now);

    // Earliest cycle after `now` at which any queued request could
    // dispatch, given current reservations. Exact between state changes.
    std::optional<Cycle> next_demand_opportunity(Cycle now) const;

    // Queues a migration of `row` into the DRAM cache. Rejects rows
    // already cached, already queued, or when no cache exists.
    bool request_migration(RowId row);
    std::vector<MigrationRecord> dispatch_migrations(Cycle now);
    std::optional<Cycle> next_migration_opportunity(Cycle now) const;
    bool migrations_pending() const { return !migration_queue_.empty(); }

    const RemapTable& remap() const { return remap_; }
    const Topology& topology() const { return topo_; }
    const BankState& bank(Device dev, std::uint32_t flat) const {
        return dev == Device::Dram ? dram_banks_[flat] : pcm_banks_[flat];
    }
    Cycle channel_busy_until(Device dev, std::uint32_t channel) const {
        return dev == Device::Dram ? dram_channel_busy_[channel] : pcm_channel_busy_[channel];
    }

private:
    struct AccessPlan {
        RouteInfo route;
        bool hit = false;
        Cycle access_time = 0; // activation (on miss) + column access
    };
    struct MigrationJob {
        RowId row;
        std::uint64_t seq;
    };

    AccessPlan plan(const QueueEntry& entry) const;
    bool dispatchable(const AccessPlan& p, const QueueEntry& entry, Cycle now) const;
    Cycle earliest_dispatch(const AccessPlan& p, const QueueEntry& entry) const;
    BankState& bank_mut(Device dev, std::uint32_t flat) {
        return dev == Device::Dram ? dram_banks_[flat] : pcm_banks_[flat];
    }
    Cycle& channel_mut(Device dev, std::uint32_t channel) {
        return dev == Device::Dram ? dram_channel_busy_[channel] : pcm_channel_busy_[channel];
    }

    Topology topo_;
    TimingParams timing_;
    SystemMode mode_;
    std::vector<BankState> dram_banks_, pcm_banks_;
    std::vector<Cycle> dram_channel_busy_, pcm_channel_busy_;
    RemapTable remap_;
    std::vector<QueueEntry> queue_;
    std::deque<MigrationJob> migration_queue_;
    std::unordered_set<RowId> pending_migration_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t next_migration_seq_ = 0;
};

} // namespace hysim
