#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core/types.hpp"

namespace hysim {

// DRAM cache remap table: fully associative over rows, LRU replacement.
// Forward map (PCM row -> slot) and the slot array must stay mutually
// consistent; occupied + free == capacity at all times.
class RemapTable {
public:
    explicit RemapTable(std::uint64_t capacity);

    std::optional<std::uint64_t> slot_of(RowId row) const;
    bool contains(RowId row) const { return forward_.count(row) != 0; }

    std::uint64_t capacity() const { return slots_.size(); }
    std::uint64_t occupied() const { return forward_.size(); }
    bool has_free_slot() const { return !free_.empty(); }
    bool full() const { return free_.empty(); }

    // Smallest free slot; caller must check has_free_slot().
    std::uint64_t peek_free_slot() const;

    // Installs `row` into the smallest free slot (MRU, clean).
    std::uint64_t insert(RowId row);

    struct Victim {
        std::uint64_t slot;
        RowId row;
        bool dirty;
    };

    // Least recently used occupied slot, without removing it.
    std::optional<Victim> lru_victim() const;

    // Removes the LRU mapping and frees its slot.
    Victim evict_lru();

    void touch(std::uint64_t slot);
    void mark_dirty(std::uint64_t slot);
    RowId row_at(std::uint64_t slot) const { return slots_[slot].row; }
    bool dirty_at(std::uint64_t slot) const { return slots_[slot].dirty; }

    // Full structural audit; used by property tests.
    bool check_consistency() const;

private:
    struct Slot {
        RowId row = 0;
        bool occupied = false;
        bool dirty = false;
        std::uint64_t stamp = 0;
    };

    std::vector<Slot> slots_;
    std::unordered_map<RowId, std::uint64_t> forward_;
    std::vector<std::uint64_t> free_;
    std::uint64_t clock_ = 0;
};

} // namespace hysim
