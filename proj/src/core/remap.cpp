#include "core/remap.hpp"

#include <algorithm>
#include <cassert>

namespace hysim {

RemapTable::RemapTable(std::uint64_t capacity) : slots_(capacity) {
    free_.reserve(capacity);
    for (std::uint64_t s = capacity; s > 0; --s) free_.push_back(s - 1);
}

std::optional<std::uint64_t> RemapTable::slot_of(RowId row) const {
    auto it = forward_.find(row);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t RemapTable::peek_free_slot() const {
    assert(!free_.empty());
    return free_.back();
}

std::uint64_t RemapTable::insert(RowId row) {
    assert(!free_.empty());
    assert(forward_.count(row) == 0);
    const std::uint64_t slot = free_.back();
    free_.pop_back();
    slots_[slot] = Slot{row, true, false, ++clock_};
    forward_[row] = slot;
    return slot;
}

std::optional<RemapTable::Victim> RemapTable::lru_victim() const {
    std::optional<Victim> best;
    std::uint64_t best_stamp = 0;
    for (std::uint64_t s = 0; s < slots_.size(); ++s) {
        const Slot& slot = slots_[s];
        if (!slot.occupied) continue;
        if (!best || slot.stamp < best_stamp) {
            best = Victim{s, slot.row, slot.dirty};
            best_stamp = slot.stamp;
        }
    }
    return best;
}

RemapTable::Victim RemapTable::evict_lru() {
    auto victim = lru_victim();
    assert(victim.has_value());
    slots_[victim->slot].occupied = false;
    slots_[victim->slot].dirty = false;
    forward_.erase(victim->row);
    // Keep the free list sorted descending so the smallest slot is reused first.
    free_.insert(std::upper_bound(free_.begin(), free_.end(), victim->slot,
                                  std::greater<std::uint64_t>()),
                 victim->slot);
    return *victim;
}

void RemapTable::touch(std::uint64_t slot) {
    assert(slots_[slot].occupied);
    slots_[slot].stamp = ++clock_;
}

void RemapTable::mark_dirty(std::uint64_t slot) {
    assert(slots_[slot].occupied);
    slots_[slot].dirty = true;
}

bool RemapTable::check_consistency() const {
    if (forward_.size() + free_.size() != slots_.size()) return false;
    for (const auto& [row, slot] : forward_) {
        if (slot >= slots_.size()) return false;
        if (!slots_[slot].occupied || slots_[slot].row != row) return false;
    }
    std::vector<bool> seen(slots_.size(), false);
    for (std::uint64_t s : free_) {
        if (s >= slots_.size() || slots_[s].occupied || seen[s]) return false;
        seen[s] = true;
    }
    for (std::uint64_t s = 0; s < slots_.size(); ++s)
        if (slots_[s].occupied && forward_.count(slots_[s].row) == 0) return false;
    return true;
}

} // namespace hysim
