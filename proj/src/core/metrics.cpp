#include "core/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "core/errors.hpp"

namespace hysim {

namespace {
constexpr double kSecondsPerYear = 365.0 * 24.0 * 3600.0;
}

double weighted_speedup(std::span<const double> ipc_shared, std::span<const double> ipc_alone) {
    if (ipc_shared.size() != ipc_alone.size() || ipc_shared.empty())
        throw ValidationError("weighted_speedup: IPC vectors must be equal-length and nonempty");
    double sum = 0.0;
    for (std::size_t i = 0; i < ipc_shared.size(); ++i) {
        if (ipc_alone[i] <= 0.0)
            throw ValidationError("weighted_speedup: alone IPC must be positive");
        sum += ipc_shared[i] / ipc_alone[i];
    }
    return sum;
}

double max_slowdown(std::span<const double> ipc_shared, std::span<const double> ipc_alone) {
    if (ipc_shared.size() != ipc_alone.size() || ipc_shared.empty())
        throw ValidationError("max_slowdown: IPC vectors must be equal-length and nonempty");
    double worst = 0.0;
    for (std::size_t i = 0; i < ipc_shared.size(); ++i) {
        if (ipc_shared[i] <= 0.0)
            throw ValidationError("max_slowdown: shared IPC must be positive");
        worst = std::max(worst, ipc_alone[i] / ipc_shared[i]);
    }
    return worst;
}

double energy_efficiency(double ws, double total_energy, Cycle total_cycles) {
    if (total_energy <= 0.0 || total_cycles == 0)
        throw ValidationError("energy_efficiency: energy and cycles must be positive");
    return ws / (total_energy / static_cast<double>(total_cycles));
}

double pcm_lifetime_years(std::uint64_t total_pcm_cell_writes, std::uint64_t pcm_capacity_rows,
                          std::uint64_t row_size, double endurance, double wall_seconds) {
    if (pcm_capacity_rows == 0 || row_size == 0 || endurance <= 0.0 || wall_seconds <= 0.0)
        throw ValidationError("pcm_lifetime: capacity, endurance and wall time must be positive");
    if (total_pcm_cell_writes == 0) return std::numeric_limits<double>::infinity();
    const double cells = static_cast<double>(pcm_capacity_rows) * static_cast<double>(row_size);
    const double writes_per_cell = static_cast<double>(total_pcm_cell_writes) / cells;
    const double writes_per_cell_per_second = writes_per_cell / wall_seconds;
    return endurance / writes_per_cell_per_second / kSecondsPerYear;
}

std::string MetricReport::to_text() const {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "weighted_speedup=%.17g\nmax_slowdown=%.17g\nenergy_efficiency=%.17g\n"
                  "pcm_lifetime_years=%.17g\ndram_row_hit_rate=%.17g\npcm_row_hit_rate=%.17g\n",
                  weighted_speedup, max_slowdown, energy_efficiency, pcm_lifetime_years,
                  dram_row_hit_rate, pcm_row_hit_rate);
    return buf;
}

MetricReport MetricReport::from_text(const std::string& text) {
    MetricReport rep;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("metric report: missing `=` in: " + line);
        const std::string key = line.substr(0, eq);
        const double value = std::strtod(line.c_str() + eq + 1, nullptr);
        if (key == "weighted_speedup") rep.weighted_speedup = value;
        else if (key == "max_slowdown") rep.max_slowdown = value;
        else if (key == "energy_efficiency") rep.energy_efficiency = value;
        else if (key == "pcm_lifetime_years") rep.pcm_lifetime_years = value;
        else if (key == "dram_row_hit_rate") rep.dram_row_hit_rate = value;
        else if (key == "pcm_row_hit_rate") rep.pcm_row_hit_rate = value;
        else throw ParseError("metric report: unknown key: " + key);
    }
    return rep;
}

} // namespace hysim
