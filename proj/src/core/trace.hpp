#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/topology.hpp"
#include "core/types.hpp"

namespace hysim {

// One memory request from a core. compute_gap is the number of compute
// cycles the core retires before issuing this request; it stands in for
// the non-memory work between consecutive misses to main memory.
struct MemoryRequest {
    std::uint32_t core_id = 0;
    AccessKind kind = AccessKind::Read;
    std::uint64_t address = 0;
    Cycle compute_gap = 0;

    bool operator==(const MemoryRequest&) const = default;
};

// Text format: `<core_id> <compute_gap> <R|W> <hex address>`, single
// spaces, address with 0x prefix. `#` lines are comments.
MemoryRequest parse_trace_line(std::string_view line, std::size_t line_number = 0);
std::string format_trace_line(const MemoryRequest& req);

std::vector<MemoryRequest> parse_trace_text(std::string_view text, std::string_view origin = "");
std::vector<MemoryRequest> load_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const std::vector<MemoryRequest>& requests,
                      const std::string& header_comment = "");

// Partitions a flat trace by core_id, preserving order within each core.
std::vector<std::vector<MemoryRequest>> split_by_core(const std::vector<MemoryRequest>& requests,
                                                      std::uint32_t num_cores);

// Knobs for the synthetic workload. Low-RBL rows conflict in a single
// bank and are emitted round-robin so that every visit misses; high-RBL
// rows receive runs of hits_per_activation back-to-back accesses.
// Row visits repeat in epochs; requests_per_core == 0 emits one epoch.
struct SyntheticSpec {
    std::uint64_t num_rows_low_rbl = 8;
    std::uint64_t num_rows_high_rbl = 8;
    std::uint64_t hits_per_activation = 8;
    std::uint64_t reuse_factor = 16;
    double write_fraction = 0.25;
    std::uint64_t requests_per_core = 0;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

std::vector<std::vector<MemoryRequest>> generate_synthetic(const SyntheticSpec& spec,
                                                           const Topology& topo,
                                                           std::uint32_t num_cores);

struct RowProfile {
    std::uint64_t accesses = 0;
    std::uint64_t row_misses = 0;
};

// Exact per-row statistics under a sequential single-issue replay of the
// request sequence against fresh (closed) PCM bank states. Unbounded
// bookkeeping; serves as the reference the bounded stats store is
// measured against.
std::map<RowId, RowProfile> trace_rbl_profile(const std::vector<MemoryRequest>& requests,
                                              const Topology& topo);

std::string profile_to_csv(const std::map<RowId, RowProfile>& profile);

} // namespace hysim
