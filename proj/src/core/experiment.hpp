#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/engine.hpp"
#include "core/metrics.hpp"

namespace hysim {

struct ExperimentResult {
    ExperimentConfig config;
    RunTally shared;
    std::vector<double> ipc_shared;
    std::vector<double> ipc_alone;
    MetricReport metrics;
    std::string timestamp; // UTC, captured when the runs finished

    // CSV schema: config_hash,policy,seed,weighted_speedup,max_slowdown,
    // energy_efficiency,pcm_lifetime_years,dram_row_hit_rate,
    // pcm_row_hit_rate,migrations,timestamp
    static const char* csv_header();
    std::string csv_row() const;

    // cycle,pcm_row,direction,victim,dirty — one line per row transfer.
    std::string migration_log_csv() const;
};

// Builds per-core request streams from the configured source. Synthetic
// traces are seeded from run.seed.
std::vector<std::vector<MemoryRequest>> materialize_traces(const ExperimentConfig& cfg);

EngineOptions engine_options(const ExperimentConfig& cfg);

// Shared run plus one alone run per core, and the derived metrics.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One independent experiment per axis value.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                        const std::vector<std::string>& values);

} // namespace hysim
