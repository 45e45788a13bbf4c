#pragma once

#include <cstdint>
#include <optional>

#include "core/types.hpp"

namespace hysim {

// Service timing in controller cycles. A row buffer hit costs only the
// column access; a miss adds the array activation for the device and
// access kind. DRAM activates at the same cost for reads and writes;
// PCM writes are slower than PCM reads.
struct TimingParams {
    Cycle t_row_hit = 15;       // column access on an open row
    Cycle t_act_dram = 40;      // DRAM array activation
    Cycle t_act_read_pcm = 170; // PCM array activation, read path
    Cycle t_act_write_pcm = 500; // PCM array activation, write path
    Cycle t_bus = 4;            // channel occupancy per line transfer
    Cycle t_migration = 800;    // channel occupancy per migrated row

    void validate() const;

    Cycle activation(Device dev, AccessKind kind) const {
        if (dev == Device::Dram) return t_act_dram;
        return kind == AccessKind::Read ? t_act_read_pcm : t_act_write_pcm;
    }
    // Full row-buffer-miss service latency (activation + column access).
    Cycle miss_latency(Device dev, AccessKind kind) const {
        return activation(dev, kind) + t_row_hit;
    }
};

struct EnergyParams {
    double e_row_hit = 2.0;       // per column access, either device
    double e_act_dram = 10.0;     // per DRAM array activation
    double e_act_read_pcm = 50.0; // per PCM read activation
    double e_act_write_pcm = 150.0; // per PCM write activation
    double e_static_dram = 0.01;  // per cycle the device is powered
    double e_static_pcm = 0.01;
    double e_migration = 400.0;   // per migrated row

    void validate() const;

    double activation(Device dev, AccessKind kind) const {
        if (dev == Device::Dram) return e_act_dram;
        return kind == AccessKind::Read ? e_act_read_pcm : e_act_write_pcm;
    }
};

// Per-bank open-row register plus the cycle the bank is reserved through.
struct BankState {
    std::optional<RowId> open_row;
    Cycle busy_until = 0;
};

// Latches `row` in the bank and reports whether it was already open.
RowOutcome bank_access(BankState& state, RowId row);

Cycle access_latency(Device dev, AccessKind kind, RowOutcome outcome, const TimingParams& t);
double access_energy(Device dev, AccessKind kind, RowOutcome outcome, const EnergyParams& e);

} // namespace hysim
