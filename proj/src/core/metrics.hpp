#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace hysim {

struct MetricReport {
    double weighted_speedup = 0.0;
    double max_slowdown = 0.0;
    double energy_efficiency = 0.0;
    double pcm_lifetime_years = 0.0; // +inf when nothing was written
    double dram_row_hit_rate = 0.0;
    double pcm_row_hit_rate = 0.0;

    // Lossless key=value serialization (full double precision).
    std::string to_text() const;
    static MetricReport from_text(const std::string& text);

    bool operator==(const MetricReport&) const = default;
};

// Sum over cores of shared-run IPC divided by alone-run IPC.
double weighted_speedup(std::span<const double> ipc_shared, std::span<const double> ipc_alone);

// Largest alone/shared IPC ratio across cores; lower is fairer.
double max_slowdown(std::span<const double> ipc_shared, std::span<const double> ipc_alone);

// Weighted speedup per unit of average power (energy per cycle).
double energy_efficiency(double ws, double total_energy, Cycle total_cycles);

// Years until the per-cell write budget is exhausted, assuming ideal
// wear-leveling spreads cell writes uniformly over the array.
double pcm_lifetime_years(std::uint64_t total_pcm_cell_writes, std::uint64_t pcm_capacity_rows,
                          std::uint64_t row_size, double endurance, double wall_seconds);

} // namespace hysim
