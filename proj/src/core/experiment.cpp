#include "core/experiment.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include "core/errors.hpp"

namespace hysim {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void append_double(std::ostringstream& os, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

} // namespace

const char* ExperimentResult::csv_header() {
    return "config_hash,policy,seed,weighted_speedup,max_slowdown,energy_efficiency,"
           "pcm_lifetime_years,dram_row_hit_rate,pcm_row_hit_rate,migrations,timestamp";
}

std::string ExperimentResult::csv_row() const {
    std::ostringstream os;
    os << config.hash_hex() << "," << to_string(config.policy) << "," << config.seed << ",";
    append_double(os, metrics.weighted_speedup);
    os << ",";
    append_double(os, metrics.max_slowdown);
    os << ",";
    append_double(os, metrics.energy_efficiency);
    os << ",";
    append_double(os, metrics.pcm_lifetime_years);
    os << ",";
    append_double(os, metrics.dram_row_hit_rate);
    os << ",";
    append_double(os, metrics.pcm_row_hit_rate);
    os << "," << shared.migrations << "," << timestamp;
    return os.str();
}

std::string ExperimentResult::migration_log_csv() const {
    std::ostringstream os;
    os << "cycle,pcm_row,direction,victim,dirty\n";
    for (const auto& rec : shared.migration_log) {
        os << rec.cycle << "," << rec.row << "," << (rec.to_dram ? "to_dram" : "to_pcm") << ",";
        if (rec.victim) os << *rec.victim;
        os << "," << (rec.dirty ? 1 : 0) << "\n";
    }
    return os.str();
}

std::vector<std::vector<MemoryRequest>> materialize_traces(const ExperimentConfig& cfg) {
    if (cfg.trace_source == TraceSource::Synthetic) {
        SyntheticSpec spec = cfg.synthetic;
        spec.rng_seed = cfg.seed;
        return generate_synthetic(spec, cfg.topology, cfg.cores);
    }
    std::vector<MemoryRequest> all;
    for (const auto& path : cfg.trace_files) {
        auto requests = load_trace_file(path);
        all.insert(all.end(), requests.begin(), requests.end());
    }
    auto per_core = split_by_core(all, cfg.cores);
    for (std::size_t c = 0; c < per_core.size(); ++c) {
        if (per_core[c].empty()) {
            std::ostringstream os;
            os << "trace: core " << c << " has no requests in the given files";
            throw ValidationError(os.str());
        }
    }
    return per_core;
}

EngineOptions engine_options(const ExperimentConfig& cfg) {
    EngineOptions opt;
    opt.mode = cfg.mode;
    opt.run_length = cfg.run_length;
    opt.warm_start = cfg.warm_start;
    opt.interval_length = cfg.interval_length();
    opt.record_requests = cfg.record_requests;
    opt.collect_migration_log = cfg.collect_migration_log;
    return opt;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto traces = materialize_traces(cfg);
    const EngineOptions opt = engine_options(cfg);

    ExperimentResult result;
    result.config = cfg;
    result.shared = run(traces, cfg.topology, cfg.timing, cfg.energy, cfg.policy,
                        cfg.policy_settings, opt);

    for (std::uint32_t c = 0; c < cfg.cores; ++c)
        result.ipc_shared.push_back(core_ipc(result.shared.cores[c]));
    for (std::uint32_t c = 0; c < cfg.cores; ++c) {
        EngineOptions alone_opt = opt;
        alone_opt.record_requests = false;
        alone_opt.collect_migration_log = false;
        const RunTally alone = run_alone(traces[c], cfg.topology, cfg.timing, cfg.energy,
                                         cfg.policy, cfg.policy_settings, alone_opt);
        result.ipc_alone.push_back(core_ipc(alone.cores[0]));
    }

    result.metrics.weighted_speedup = weighted_speedup(result.ipc_shared, result.ipc_alone);
    result.metrics.max_slowdown = max_slowdown(result.ipc_shared, result.ipc_alone);
    result.metrics.energy_efficiency = energy_efficiency(
        result.metrics.weighted_speedup, result.shared.total_energy(), result.shared.total_cycles);
    const double wall_seconds =
        static_cast<double>(result.shared.total_cycles) / (cfg.clock_ghz * 1e9);
    result.metrics.pcm_lifetime_years =
        pcm_lifetime_years(result.shared.pcm_cell_writes(cfg.topology.row_size),
                           cfg.topology.pcm_rows, cfg.topology.row_size, cfg.endurance,
                           wall_seconds);
    result.metrics.dram_row_hit_rate = result.shared.dram.hit_rate();
    result.metrics.pcm_row_hit_rate = result.shared.pcm.hit_rate();
    result.timestamp = utc_timestamp();
    return result;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                        const std::vector<std::string>& values) {
    if (values.empty()) throw ValidationError("sweep: empty value list");
    std::vector<ExperimentResult> results;
    results.reserve(values.size());
    for (const auto& value : values) {
        ExperimentConfig cfg = base;
        apply_override(cfg, axis, value);
        results.push_back(run_experiment(cfg));
    }
    return results;
}

} // namespace hysim
