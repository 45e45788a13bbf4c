#include "core/policy.hpp"

#include <algorithm>
#include <cassert>

#include "core/errors.hpp"

namespace hysim {

PolicyKind parse_policy(const std::string& name) {
    if (name == "freq") return PolicyKind::Freq;
    if (name == "freq-dyn") return PolicyKind::FreqDyn;
    if (name == "rbla") return PolicyKind::Rbla;
    if (name == "rbla-dyn") return PolicyKind::RblaDyn;
    throw ValidationError("policy.kind: unknown policy `" + name +
                          "` (expected freq, freq-dyn, rbla, rbla-dyn)");
}

const char* to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::Freq: return "freq";
    case PolicyKind::FreqDyn: return "freq-dyn";
    case PolicyKind::Rbla: return "rbla";
    default: return "rbla-dyn";
    }
}

void PolicySettings::validate() const {
    if (thresh_min < 1) throw ValidationError("policy.thresh_min: must be >= 1");
    if (thresh_max > StatsStore::kCounterMax)
        throw ValidationError("policy.thresh_max: must be <= 31 (counter range)");
    if (thresh_min > thresh_max)
        throw ValidationError("policy.thresh_min: must be <= policy.thresh_max");
    if (miss_thresh < thresh_min || miss_thresh > thresh_max)
        throw ValidationError("policy.miss_thresh: must lie within [thresh_min, thresh_max]");
    if (!stats_unbounded && (stats_sets == 0 || stats_ways == 0))
        throw ValidationError("policy.stats_sets/stats_ways: must be >= 1");
    if (interval_scale <= 0.0)
        throw ValidationError("policy.interval_scale: must be > 0");
}

StatsStore::StatsStore(std::uint32_t sets, std::uint32_t ways, bool unbounded)
    : unbounded_(unbounded), sets_(sets), ways_(ways) {
    if (!unbounded_) table_.resize(sets_);
}

std::uint32_t StatsStore::touch(RowId row, StatsEvent event) {
    const std::uint32_t bump = (event == StatsEvent::RowHit) ? 0 : 1;
    if (unbounded_) {
        auto [it, inserted] = flat_.try_emplace(row, 0);
        it->second = std::min(it->second + bump, kCounterMax);
        return it->second;
    }
    auto& set = table_[row % sets_];
    const std::uint64_t tag = row / sets_;
    for (auto& entry : set) {
        if (entry.tag == tag) {
            entry.counter = std::min(entry.counter + bump, kCounterMax);
            entry.stamp = ++clock_;
            return entry.counter;
        }
    }
    if (set.size() >= ways_) {
        auto lru = std::min_element(set.begin(), set.end(),
                                    [](const Entry& a, const Entry& b) { return a.stamp < b.stamp; });
        set.erase(lru);
    }
    set.push_back(Entry{tag, std::min(bump, kCounterMax), ++clock_});
    return set.back().counter;
}

void StatsStore::erase(RowId row) {
    if (unbounded_) {
        flat_.erase(row);
        return;
    }
    auto& set = table_[row % sets_];
    const std::uint64_t tag = row / sets_;
    for (auto it = set.begin(); it != set.end(); ++it) {
        if (it->tag == tag) {
            set.erase(it);
            return;
        }
    }
}

void StatsStore::reset_counters() {
    if (unbounded_) {
        for (auto& [row, counter] : flat_) counter = 0;
        return;
    }
    for (auto& set : table_)
        for (auto& entry : set) entry.counter = 0;
}

bool StatsStore::contains(RowId row) const {
    if (unbounded_) return flat_.count(row) != 0;
    const auto& set = table_[row % sets_];
    const std::uint64_t tag = row / sets_;
    for (const auto& entry : set)
        if (entry.tag == tag) return true;
    return false;
}

std::uint32_t StatsStore::counter_of(RowId row) const {
    if (unbounded_) {
        auto it = flat_.find(row);
        return it == flat_.end() ? 0 : it->second;
    }
    const auto& set = table_[row % sets_];
    const std::uint64_t tag = row / sets_;
    for (const auto& entry : set)
        if (entry.tag == tag) return entry.counter;
    return 0;
}

std::uint64_t StatsStore::entry_count() const {
    if (unbounded_) return flat_.size();
    std::uint64_t n = 0;
    for (const auto& set : table_) n += set.size();
    return n;
}

std::uint64_t compute_cost(std::uint64_t num_migrations, Cycle t_migration) {
    return num_migrations * t_migration;
}

std::uint64_t compute_benefit(std::uint64_t reads_dram, std::uint64_t writes_dram,
                              const TimingParams& t) {
    const std::uint64_t read_delta =
        t.miss_latency(Device::Pcm, AccessKind::Read) - t.miss_latency(Device::Dram, AccessKind::Read);
    const std::uint64_t write_delta =
        t.miss_latency(Device::Pcm, AccessKind::Write) - t.miss_latency(Device::Dram, AccessKind::Write);
    return reads_dram * read_delta + writes_dram * write_delta;
}

void adjust_threshold(PolicyState& state, std::int64_t net_benefit) {
    if (net_benefit <= state.prev_net_benefit) state.direction = -state.direction;
    std::int64_t next = static_cast<std::int64_t>(state.miss_thresh) + state.direction;
    next = std::clamp<std::int64_t>(next, state.thresh_min, state.thresh_max);
    state.miss_thresh = static_cast<std::uint32_t>(next);
    state.prev_net_benefit = net_benefit;
    state.num_migrations = 0;
    state.reads_dram = 0;
    state.writes_dram = 0;
}

PlacementPolicy::PlacementPolicy(PolicyKind kind, const PolicySettings& settings)
    : kind_(kind),
      store_(settings.stats_sets, settings.stats_ways, settings.stats_unbounded) {
    state_.miss_thresh = settings.miss_thresh;
    state_.thresh_min = settings.thresh_min;
    state_.thresh_max = settings.thresh_max;
}

PlacementDecision PlacementPolicy::on_memory_access(RowId row, Device dev, AccessKind kind,
                                                    RowOutcome outcome) {
    if (dev == Device::Dram) {
        if (kind == AccessKind::Read) ++state_.reads_dram;
        else ++state_.writes_dram;
        return PlacementDecision::None;
    }
    const StatsEvent event = counts_all_accesses(kind_)
                                 ? StatsEvent::Access
                                 : (outcome == RowOutcome::Miss ? StatsEvent::RowMiss
                                                                : StatsEvent::RowHit);
    const std::uint32_t counter = store_.touch(row, event);
    if (should_cache(counter, state_.miss_thresh)) {
        // Once a row is headed for the cache its PCM statistics are stale.
        store_.erase(row);
        return PlacementDecision::CacheRow;
    }
    return PlacementDecision::None;
}

IntervalRecord PlacementPolicy::end_interval(std::uint64_t index, const TimingParams& timing,
                                             Cycle measured_migration_cycles) {
    IntervalRecord rec;
    rec.index = index;
    rec.num_migrations = state_.num_migrations;
    rec.reads_dram = state_.reads_dram;
    rec.writes_dram = state_.writes_dram;
    rec.cost = compute_cost(state_.num_migrations, timing.t_migration);
    rec.benefit = compute_benefit(state_.reads_dram, state_.writes_dram, timing);
    rec.net_benefit = static_cast<std::int64_t>(rec.benefit) - static_cast<std::int64_t>(rec.cost);
    rec.measured_migration_cycles = measured_migration_cycles;
    if (is_dynamic(kind_)) {
        adjust_threshold(state_, rec.net_benefit);
    } else {
        state_.num_migrations = 0;
        state_.reads_dram = 0;
        state_.writes_dram = 0;
    }
    rec.thresh_after = state_.miss_thresh;
    return rec;
}

} // namespace hysim
