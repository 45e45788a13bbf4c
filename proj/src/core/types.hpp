#pragma once

#include <cstdint>

namespace hysim {

using Cycle = std::uint64_t;
using RowId = std::uint64_t;

enum class Device : std::uint8_t { Dram, Pcm };
enum class AccessKind : std::uint8_t { Read, Write };
enum class RowOutcome : std::uint8_t { Hit, Miss };
enum class SystemMode : std::uint8_t { Hybrid, AllDram, AllPcm };

inline const char* to_string(Device d) { return d == Device::Dram ? "dram" : "pcm"; }
inline const char* to_string(AccessKind k) { return k == AccessKind::Read ? "read" : "write"; }
inline const char* to_string(RowOutcome o) { return o == RowOutcome::Hit ? "hit" : "miss"; }
inline const char* to_string(SystemMode m) {
    switch (m) {
    case SystemMode::Hybrid: return "hybrid";
    case SystemMode::AllDram: return "all_dram";
    default: return "all_pcm";
    }
}

// One cache line per bus transfer; used for PCM cell-write accounting.
inline constexpr std::uint64_t kLineBytes = 64;

} // namespace hysim
