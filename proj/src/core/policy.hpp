#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/device.hpp"
#include "core/types.hpp"

namespace hysim {

enum class PolicyKind : std::uint8_t { Freq, FreqDyn, Rbla, RblaDyn };

PolicyKind parse_policy(const std::string& name);
const char* to_string(PolicyKind kind);
inline bool is_dynamic(PolicyKind k) { return k == PolicyKind::FreqDyn || k == PolicyKind::RblaDyn; }
// FREQ counts every access toward its counter; RBLA counts only row
// buffer misses and leaves the counter alone on hits.
inline bool counts_all_accesses(PolicyKind k) {
    return k == PolicyKind::Freq || k == PolicyKind::FreqDyn;
}

enum class StatsEvent : std::uint8_t { RowHit, RowMiss, Access };

// Set-associative tag store of per-row saturating counters, LRU within
// each set. Set index = row mod sets, tag = row / sets. The unbounded
// variant keeps every row and is used to bound the fidelity loss of the
// real structure.
class StatsStore {
public:
    static constexpr std::uint32_t kCounterMax = 31; // 5-bit saturating

    StatsStore(std::uint32_t sets, std::uint32_t ways, bool unbounded);

    // Allocates the row if absent (evicting the set's LRU entry when
    // full), applies the event, refreshes LRU, and returns the counter.
    std::uint32_t touch(RowId row, StatsEvent event);
    void erase(RowId row);
    void reset_counters(); // counters to zero; tags and LRU order kept

    bool contains(RowId row) const;
    std::uint32_t counter_of(RowId row) const; // 0 when absent
    std::uint64_t entry_count() const;

private:
    struct Entry {
        std::uint64_t tag;
        std::uint32_t counter;
        std::uint64_t stamp;
    };

    bool unbounded_;
    std::uint32_t sets_;
    std::uint32_t ways_;
    std::vector<std::vector<Entry>> table_;
    std::unordered_map<RowId, std::uint32_t> flat_; // unbounded variant
    std::uint64_t clock_ = 0;
};

struct PolicySettings {
    std::uint32_t miss_thresh = 2;
    std::uint32_t thresh_min = 1;
    std::uint32_t thresh_max = 31;
    std::uint32_t stats_sets = 128;
    std::uint32_t stats_ways = 16;
    bool stats_unbounded = false;
    double interval_scale = 0.01; // of the 10M-cycle base interval

    void validate() const;
};

struct PolicyState {
    std::uint32_t miss_thresh = 2;
    int direction = +1; // +1 raises the threshold, -1 lowers it
    std::int64_t prev_net_benefit = 0;
    std::uint32_t thresh_min = 1;
    std::uint32_t thresh_max = 31;
    // Interval accumulators.
    std::uint64_t num_migrations = 0;
    std::uint64_t reads_dram = 0;
    std::uint64_t writes_dram = 0;
};

std::uint64_t compute_cost(std::uint64_t num_migrations, Cycle t_migration);
std::uint64_t compute_benefit(std::uint64_t reads_dram, std::uint64_t writes_dram,
                              const TimingParams& t);
inline bool should_cache(std::uint32_t counter, std::uint32_t thresh) { return counter > thresh; }

// One hill-climbing step: keep direction on improvement, otherwise
// reverse, then move the threshold one step, clamped. Accumulators are
// zeroed for the next interval.
void adjust_threshold(PolicyState& state, std::int64_t net_benefit);

enum class PlacementDecision : std::uint8_t { None, CacheRow };

struct IntervalRecord {
    std::uint64_t index = 0;
    std::uint64_t num_migrations = 0;
    std::uint64_t reads_dram = 0;
    std::uint64_t writes_dram = 0;
    std::uint64_t cost = 0;
    std::uint64_t benefit = 0;
    std::int64_t net_benefit = 0;
    std::uint32_t thresh_after = 0;
    Cycle measured_migration_cycles = 0;
};

class PlacementPolicy {
public:
    PlacementPolicy(PolicyKind kind, const PolicySettings& settings);

    // Invoked once per completed demand access. PCM accesses feed the
    // stats store and may trigger caching; DRAM accesses (cache-resident
    // rows only) feed the benefit accumulators.
    PlacementDecision on_memory_access(RowId row, Device dev, AccessKind kind, RowOutcome outcome);

    void note_migrations(std::uint64_t count) { state_.num_migrations += count; }

    // End-of-interval bookkeeping: computes the interval's cost/benefit,
    // runs the threshold adaptation for the *-Dyn variants, and zeroes
    // the accumulators. Counter reset is a separate step.
    IntervalRecord end_interval(std::uint64_t index, const TimingParams& timing,
                                Cycle measured_migration_cycles);
    void reset_counters() { store_.reset_counters(); }

    PolicyKind kind() const { return kind_; }
    std::uint32_t miss_thresh() const { return state_.miss_thresh; }
    const PolicyState& state() const { return state_; }
    const StatsStore& store() const { return store_; }

private:
    PolicyKind kind_;
    StatsStore store_;
    PolicyState state_;
};

} // namespace hysim
