#pragma once

#include <cstdint>
#include <vector>

#include "core/controller.hpp"
#include "core/device.hpp"
#include "core/policy.hpp"
#include "core/topology.hpp"
#include "core/trace.hpp"
#include "core/types.hpp"

namespace hysim {

// Cores are in-order and stall on memory: each core issues its next
// request compute_gap cycles after the previous one completes, and has
// at most one request outstanding. With request i completing at cycle
// c_i, arrivals follow
//
//     arrival_0     = compute_gap_0
//     arrival_(i+1) = c_i + compute_gap_(i+1)
//
// At every cycle with activity, processing order is:
//   1. interval boundary (threshold adaptation, then counter reset)
//   2. request completions, in (completion, dispatch order) order;
//      caching decisions are taken here
//   3. new arrivals enter the queue (cores in id order)
//   4. migration dispatch (FIFO scan, blocked jobs skipped)
//   5. demand dispatch (FR-FCFS, repeated until nothing fits)
// The engine only visits cycles where one of these can occur; the set of
// such cycles is closed under the rules above, so results are identical
// to a cycle-by-cycle walk.
struct EngineOptions {
    SystemMode mode = SystemMode::Hybrid;
    Cycle run_length = 0; // 0 = run until traces drain; otherwise stop issuing at this cycle
    bool warm_start = false;
    Cycle interval_length = 100000;
    bool record_requests = false;
    bool collect_migration_log = false;
};

struct CoreTally {
    std::uint64_t instructions = 0; // compute cycles + completed requests
    Cycle cycles = 0;               // completion cycle of the core's last request
    std::uint64_t requests = 0;
};

struct DeviceTally {
    std::uint64_t row_hits = 0;
    std::uint64_t row_misses = 0;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t latency_sum = 0; // completion - arrival, per request
    double dynamic_energy = 0.0;

    std::uint64_t accesses() const { return row_hits + row_misses; }
    double hit_rate() const {
        return accesses() == 0 ? 0.0 : static_cast<double>(row_hits) / static_cast<double>(accesses());
    }
};

struct RequestRecord {
    std::uint32_t core = 0;
    std::uint32_t index = 0;
    RowId row = 0;
    AccessKind kind = AccessKind::Read;
    Device device = Device::Pcm;
    RowOutcome outcome = RowOutcome::Miss;
    Cycle arrival = 0;
    Cycle dispatch = 0;
    Cycle completion = 0;
};

struct RunTally {
    std::vector<CoreTally> cores;
    DeviceTally dram;
    DeviceTally pcm;
    std::uint64_t migrations = 0;          // row transfers, writebacks included
    Cycle migration_busy_cycles = 0;       // sum of transfer durations
    std::uint64_t pcm_writeback_rows = 0;  // dirty rows written back to PCM
    double migration_energy = 0.0;
    double static_energy = 0.0;
    Cycle total_cycles = 0;
    std::uint64_t requests_issued = 0;
    std::uint64_t requests_completed = 0;
    std::vector<IntervalRecord> intervals;
    std::vector<RequestRecord> request_log;     // when record_requests
    std::vector<MigrationRecord> migration_log; // when collect_migration_log

    double total_energy() const {
        return dram.dynamic_energy + pcm.dynamic_energy + migration_energy + static_energy;
    }
    // PCM cells written: one line per demand write, a full row per writeback.
    std::uint64_t pcm_cell_writes(std::uint64_t row_size) const {
        return pcm.writes * kLineBytes + pcm_writeback_rows * row_size;
    }
};

RunTally run(const std::vector<std::vector<MemoryRequest>>& per_core_traces, const Topology& topo,
             const TimingParams& timing, const EnergyParams& energy, PolicyKind policy,
             const PolicySettings& policy_settings, const EngineOptions& options);

// Same semantics with a single core occupying the system.
RunTally run_alone(const std::vector<MemoryRequest>& trace, const Topology& topo,
                   const TimingParams& timing, const EnergyParams& energy, PolicyKind policy,
                   const PolicySettings& policy_settings, const EngineOptions& options);

double core_ipc(const CoreTally& core);

} // namespace hysim
