#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "core/errors.hpp"
#include "core/types.hpp"

namespace hysim {

// Physical bank position: channel plus a flat index into the device's
// bank array (channel * banks_per_channel + bank).
struct BankLoc {
    std::uint32_t channel = 0;
    std::uint32_t flat = 0;
};

struct Topology {
    std::uint32_t dram_channels = 1;
    std::uint32_t pcm_channels = 1;
    std::uint32_t banks_per_channel = 4;
    std::uint64_t row_size = 4096; // bytes
    std::uint64_t dram_rows = 64;  // DRAM cache capacity in rows; 0 disables caching
    std::uint64_t pcm_rows = 4096;

    void validate() const {
        if (dram_channels == 0) throw ValidationError("topology.dram_channels: must be >= 1");
        if (pcm_channels == 0) throw ValidationError("topology.pcm_channels: must be >= 1");
        if (banks_per_channel == 0) throw ValidationError("topology.banks_per_channel: must be >= 1");
        if (row_size == 0) throw ValidationError("topology.row_size: must be >= 1");
        if (pcm_rows == 0) throw ValidationError("topology.pcm_rows: must be >= 1");
        if (dram_rows >= pcm_rows)
            throw ValidationError("topology.dram_rows: must be < topology.pcm_rows");
    }

    std::uint32_t channels(Device dev) const {
        return dev == Device::Dram ? dram_channels : pcm_channels;
    }
    std::uint32_t bank_count(Device dev) const { return channels(dev) * banks_per_channel; }

    // Rows interleave across channels first, then banks within a channel.
    // Rows whose ids differ by a multiple of bank_count() share a bank.
    BankLoc bank_of(Device dev, RowId physical_row) const {
        const std::uint32_t ch = static_cast<std::uint32_t>(physical_row % channels(dev));
        const std::uint32_t bank =
            static_cast<std::uint32_t>((physical_row / channels(dev)) % banks_per_channel);
        return BankLoc{ch, ch * banks_per_channel + bank};
    }

    std::uint64_t addressable_bytes() const { return pcm_rows * row_size; }
};

struct RowColumn {
    RowId row;
    std::uint64_t column;
};

inline RowColumn map_address(std::uint64_t address, const Topology& topo) {
    if (address >= topo.addressable_bytes()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(address));
        throw ValidationError(std::string("address out of range: ") + buf);
    }
    return RowColumn{address / topo.row_size, address % topo.row_size};
}

} // namespace hysim
