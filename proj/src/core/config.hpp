#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/device.hpp"
#include "core/policy.hpp"
#include "core/topology.hpp"
#include "core/trace.hpp"
#include "core/types.hpp"

namespace hysim {

enum class TraceSource : std::uint8_t { Synthetic, Files };

// One run is fully determined by this structure. The on-disk format is
// flat `key = value` pairs under [section] headers; `#` and `;` start
// comments. Unknown keys are rejected.
struct ExperimentConfig {
    // [run]
    SystemMode mode = SystemMode::Hybrid;
    std::uint32_t cores = 4;
    std::uint64_t seed = 1;
    Cycle run_length = 0; // 0 = drain
    bool warm_start = false;
    double clock_ghz = 1.0;
    double endurance = 1e8;
    bool record_requests = false;     // observability only, excluded from the hash
    bool collect_migration_log = false;

    Topology topology;
    TimingParams timing;
    EnergyParams energy;

    // [policy]
    PolicyKind policy = PolicyKind::RblaDyn;
    PolicySettings policy_settings;

    // [trace]
    TraceSource trace_source = TraceSource::Synthetic;
    std::vector<std::string> trace_files;
    SyntheticSpec synthetic;

    void validate() const;

    // Counter reset and threshold adaptation share one interval.
    Cycle interval_length() const;

    // Normalized full-precision dump; equal configs produce equal text.
    std::string canonical_text() const;
    std::uint64_t hash() const; // FNV-1a over canonical_text minus observability toggles
    std::string hash_hex() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Applies `key=value` where key is `section.key` or a sweep alias.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Axes accepted by apply_override / run_sweep, for error messages.
std::vector<std::string> sweep_axes();

} // namespace hysim
