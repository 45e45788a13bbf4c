#include "core/controller.hpp"

#include <algorithm>
#include <cassert>

namespace hysim {

MemoryController::MemoryController(const Topology& topo, const TimingParams& timing,
                                   SystemMode mode)
    : topo_(topo),
      timing_(timing),
      mode_(mode),
      dram_banks_(topo.bank_count(Device::Dram)),
      pcm_banks_(topo.bank_count(Device::Pcm)),
      dram_channel_busy_(topo.dram_channels, 0),
      pcm_channel_busy_(topo.pcm_channels, 0),
      remap_(mode == SystemMode::Hybrid ? topo.dram_rows : 0) {}

void MemoryController::warm_open(const std::vector<std::vector<MemoryRequest>>& traces) {
    for (const auto& trace : traces) {
        for (const auto& req : trace) {
            const RowId row = map_address(req.address, topo_).row;
            const RouteInfo r = route(row);
            BankState& bank = bank_mut(r.device, r.bank.flat);
            if (!bank.open_row.has_value()) bank.open_row = r.physical_row;
        }
    }
}

RouteInfo MemoryController::route(RowId row) const {
    switch (mode_) {
    case SystemMode::AllDram:
        return RouteInfo{Device::Dram, row, topo_.bank_of(Device::Dram, row)};
    case SystemMode::AllPcm:
        return RouteInfo{Device::Pcm, row, topo_.bank_of(Device::Pcm, row)};
    case SystemMode::Hybrid:
    default:
        if (auto slot = remap_.slot_of(row))
            return RouteInfo{Device::Dram, *slot, topo_.bank_of(Device::Dram, *slot)};
        return RouteInfo{Device::Pcm, row, topo_.bank_of(Device::Pcm, row)};
    }
}

void MemoryController::enqueue(std::uint32_t core, std::uint32_t index, RowId row,
                               std::uint64_t column, AccessKind kind, Cycle arrival) {
    queue_.push_back(QueueEntry{core, index, row, column, kind, arrival, next_seq_++});
}

MemoryController::AccessPlan MemoryController::plan(const QueueEntry& entry) const {
    AccessPlan p;
    p.route = route(entry.row);
    const BankState& bank_state = bank(p.route.device, p.route.bank.flat);
    p.hit = bank_state.open_row.has_value() && *bank_state.open_row == p.route.physical_row;
    p.access_time = (p.hit ? 0 : timing_.activation(p.route.device, entry.kind)) + timing_.t_row_hit;
    return p;
}

bool MemoryController::dispatchable(const AccessPlan& p, const QueueEntry& entry,
                                    Cycle now) const {
    if (entry.arrival > now) return false;
    if (bank(p.route.device, p.route.bank.flat).busy_until > now) return false;
    return channel_busy_until(p.route.device, p.route.bank.channel) <= now + p.access_time;
}

Cycle MemoryController::earliest_dispatch(const AccessPlan& p, const QueueEntry& entry) const {
    const Cycle bank_free = bank(p.route.device, p.route.bank.flat).busy_until;
    const Cycle ch_busy = channel_busy_until(p.route.device, p.route.bank.channel);
    const Cycle ch_free = ch_busy > p.access_time ? ch_busy - p.access_time : 0;
    return std::max({entry.arrival, bank_free, ch_free});
}

std::optional<std::size_t> MemoryController::schedule_next(Cycle now) const {
    std::optional<std::size_t> best;
    bool best_hit = false;
    Cycle best_arrival = 0;
    std::uint64_t best_seq = 0;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
        const QueueEntry& entry = queue_[i];
        const AccessPlan p = plan(entry);
        if (!dispatchable(p, entry, now)) continue;
        const bool better =
            !best ||
            (p.hit != best_hit ? p.hit
                               : (entry.arrival != best_arrival ? entry.arrival < best_arrival
                                                                : entry.seq < best_seq));
        if (better) {
            best = i;
            best_hit = p.hit;
            best_arrival = entry.arrival;
            best_seq = entry.seq;
        }
    }
    return best;
}

DispatchResult MemoryController::dispatch(std::size_t queue_index, Cycle now) {
    assert(queue_index < queue_.size());
    const QueueEntry entry = queue_[queue_index];
    const AccessPlan p = plan(entry);
    assert(dispatchable(p, entry, now));

    BankState& bank_state = bank_mut(p.route.device, p.route.bank.flat);
    const RowOutcome outcome = bank_access(bank_state, p.route.physical_row);
    assert((outcome == RowOutcome::Hit) == p.hit);

    const Cycle completion = now + p.access_time + timing_.t_bus;
    bank_state.busy_until = completion;
    Cycle& ch = channel_mut(p.route.device, p.route.bank.channel);
    assert(ch <= now + p.access_time);
    ch = completion;

    if (mode_ == SystemMode::Hybrid && p.route.device == Device::Dram) {
        remap_.touch(p.route.physical_row);
        if (entry.kind == AccessKind::Write) remap_.mark_dirty(p.route.physical_row);
    }

    queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(queue_index));
    return DispatchResult{entry, p.route, outcome, now, completion};
}

std::optional<Cycle> MemoryController::next_demand_opportunity(Cycle now) const {
    std::optional<Cycle> earliest;
    for (const QueueEntry& entry : queue_) {
        const AccessPlan p = plan(entry);
        Cycle t = earliest_dispatch(p, entry);
        if (t <= now) t = now + 1; // outcome may flip before then; re-scan
        if (!earliest || t < *earliest) earliest = t;
    }
    return earliest;
}

bool MemoryController::request_migration(RowId row) {
    if (mode_ != SystemMode::Hybrid) return false;
    if (remap_.capacity() == 0) return false;
    if (remap_.contains(row)) return false;
    if (pending_migration_.count(row)) return false;
    migration_queue_.push_back(MigrationJob{row, next_migration_seq_++});
    pending_migration_.insert(row);
    return true;
}

std::vector<MigrationRecord> MemoryController::dispatch_migrations(Cycle now) {
    std::vector<MigrationRecord> records;
    for (auto it = migration_queue_.begin(); it != migration_queue_.end();) {
        const RowId row = it->row;
        assert(!remap_.contains(row));

        std::optional<RemapTable::Victim> victim;
        std::uint64_t target_slot;
        if (remap_.has_free_slot()) {
            target_slot = remap_.peek_free_slot();
        } else {
            victim = remap_.lru_victim();
            assert(victim.has_value());
            target_slot = victim->slot;
        }
        const bool writeback = victim.has_value() && victim->dirty;

        const BankLoc src = topo_.bank_of(Device::Pcm, row);
        const BankLoc dst = topo_.bank_of(Device::Dram, target_slot);
        const BankLoc victim_loc =
            writeback ? topo_.bank_of(Device::Pcm, victim->row) : BankLoc{};

        const bool ready =
            pcm_banks_[src.flat].busy_until <= now && pcm_channel_busy_[src.channel] <= now &&
            dram_banks_[dst.flat].busy_until <= now && dram_channel_busy_[dst.channel] <= now &&
            (!writeback || (pcm_banks_[victim_loc.flat].busy_until <= now &&
                            pcm_channel_busy_[victim_loc.channel] <= now));
        if (!ready) {
            ++it;
            continue;
        }

        const Cycle duration = timing_.t_migration * (writeback ? 2 : 1);
        const Cycle end = now + duration;
        pcm_banks_[src.flat].busy_until = end;
        pcm_channel_busy_[src.channel] = end;
        dram_banks_[dst.flat].busy_until = end;
        dram_channel_busy_[dst.channel] = end;
        if (writeback) {
            pcm_banks_[victim_loc.flat].busy_until = end;
            pcm_channel_busy_[victim_loc.channel] = end;
            pcm_banks_[victim_loc.flat].open_row = victim->row;
        }

        if (victim) remap_.evict_lru();
        const std::uint64_t slot = remap_.insert(row);
        assert(slot == target_slot);

        // The transfers stream through the row buffers at both ends.
        pcm_banks_[src.flat].open_row = row;
        dram_banks_[dst.flat].open_row = slot;

        if (writeback)
            records.push_back(MigrationRecord{now, victim->row, false, std::nullopt, true,
                                              timing_.t_migration});
        records.push_back(MigrationRecord{now, row, true,
                                          victim ? std::optional<RowId>(victim->row) : std::nullopt,
                                          victim.has_value() && victim->dirty,
                                          timing_.t_migration});

        pending_migration_.erase(row);
        it = migration_queue_.erase(it);
    }
    return records;
}

std::optional<Cycle> MemoryController::next_migration_opportunity(Cycle now) const {
    std::optional<Cycle> earliest;
    for (const MigrationJob& job : migration_queue_) {
        std::optional<RemapTable::Victim> victim;
        std::uint64_t target_slot;
        if (remap_.has_free_slot()) {
            target_slot = remap_.peek_free_slot();
        } else {
            victim = remap_.lru_victim();
            if (!victim) continue;
            target_slot = victim->slot;
        }
        const bool writeback = victim.has_value() && victim->dirty;
        const BankLoc src = topo_.bank_of(Device::Pcm, job.row);
        const BankLoc dst = topo_.bank_of(Device::Dram, target_slot);
        Cycle t = std::max({pcm_banks_[src.flat].busy_until, pcm_channel_busy_[src.channel],
                            dram_banks_[dst.flat].busy_until, dram_channel_busy_[dst.channel]});
        if (writeback) {
            const BankLoc v = topo_.bank_of(Device::Pcm, victim->row);
            t = std::max({t, pcm_banks_[v.flat].busy_until, pcm_channel_busy_[v.channel]});
        }
        if (t <= now) t = now + 1;
        if (!earliest || t < *earliest) earliest = t;
    }
    return earliest;
}

} // namespace hysim
