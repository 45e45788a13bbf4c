#include "core/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace hysim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64_field(const std::string& where, const std::string& value) {
    if (value.empty() || value[0] == '-')
        throw ValidationError(where + ": expected a non-negative integer, got `" + value + "`");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size())
        throw ValidationError(where + ": expected a non-negative integer, got `" + value + "`");
    return v;
}

std::uint32_t parse_u32_field(const std::string& where, const std::string& value) {
    const std::uint64_t v = parse_u64_field(where, value);
    if (v > 0xFFFFFFFFull) throw ValidationError(where + ": value too large: " + value);
    return static_cast<std::uint32_t>(v);
}

double parse_double_field(const std::string& where, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || std::isnan(v))
        throw ValidationError(where + ": expected a number, got `" + value + "`");
    return v;
}

bool parse_bool_field(const std::string& where, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ValidationError(where + ": expected true/false, got `" + value + "`");
}

SystemMode parse_mode(const std::string& where, const std::string& value) {
    if (value == "hybrid") return SystemMode::Hybrid;
    if (value == "all_dram") return SystemMode::AllDram;
    if (value == "all_pcm") return SystemMode::AllPcm;
    throw ValidationError(where + ": expected hybrid, all_dram or all_pcm, got `" + value + "`");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string item = trim(comma == std::string::npos ? value.substr(start)
                                                           : value.substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Single point of truth for key binding; used by the file parser and by
// overrides so both accept exactly the same names.
void set_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value) {
    const std::string where = section + "." + key;
    if (section == "run") {
        if (key == "mode") cfg.mode = parse_mode(where, value);
        else if (key == "cores") cfg.cores = parse_u32_field(where, value);
        else if (key == "seed") cfg.seed = parse_u64_field(where, value);
        else if (key == "run_length") cfg.run_length = parse_u64_field(where, value);
        else if (key == "warm_start") cfg.warm_start = parse_bool_field(where, value);
        else if (key == "clock_ghz") cfg.clock_ghz = parse_double_field(where, value);
        else if (key == "endurance") cfg.endurance = parse_double_field(where, value);
        else if (key == "record_requests") cfg.record_requests = parse_bool_field(where, value);
        else if (key == "migration_log") cfg.collect_migration_log = parse_bool_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else if (section == "topology") {
        if (key == "dram_channels") cfg.topology.dram_channels = parse_u32_field(where, value);
        else if (key == "pcm_channels") cfg.topology.pcm_channels = parse_u32_field(where, value);
        else if (key == "banks_per_channel") cfg.topology.banks_per_channel = parse_u32_field(where, value);
        else if (key == "row_size") cfg.topology.row_size = parse_u64_field(where, value);
        else if (key == "dram_rows") cfg.topology.dram_rows = parse_u64_field(where, value);
        else if (key == "pcm_rows") cfg.topology.pcm_rows = parse_u64_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else if (section == "timing") {
        if (key == "t_row_hit") cfg.timing.t_row_hit = parse_u64_field(where, value);
        else if (key == "t_act_dram") cfg.timing.t_act_dram = parse_u64_field(where, value);
        else if (key == "t_act_read_pcm") cfg.timing.t_act_read_pcm = parse_u64_field(where, value);
        else if (key == "t_act_write_pcm") cfg.timing.t_act_write_pcm = parse_u64_field(where, value);
        else if (key == "t_bus") cfg.timing.t_bus = parse_u64_field(where, value);
        else if (key == "t_migration") cfg.timing.t_migration = parse_u64_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else if (section == "energy") {
        if (key == "e_row_hit") cfg.energy.e_row_hit = parse_double_field(where, value);
        else if (key == "e_act_dram") cfg.energy.e_act_dram = parse_double_field(where, value);
        else if (key == "e_act_read_pcm") cfg.energy.e_act_read_pcm = parse_double_field(where, value);
        else if (key == "e_act_write_pcm") cfg.energy.e_act_write_pcm = parse_double_field(where, value);
        else if (key == "e_static_dram") cfg.energy.e_static_dram = parse_double_field(where, value);
        else if (key == "e_static_pcm") cfg.energy.e_static_pcm = parse_double_field(where, value);
        else if (key == "e_migration") cfg.energy.e_migration = parse_double_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else if (section == "policy") {
        if (key == "kind") cfg.policy = parse_policy(value);
        else if (key == "miss_thresh") cfg.policy_settings.miss_thresh = parse_u32_field(where, value);
        else if (key == "thresh_min") cfg.policy_settings.thresh_min = parse_u32_field(where, value);
        else if (key == "thresh_max") cfg.policy_settings.thresh_max = parse_u32_field(where, value);
        else if (key == "stats_sets") cfg.policy_settings.stats_sets = parse_u32_field(where, value);
        else if (key == "stats_ways") cfg.policy_settings.stats_ways = parse_u32_field(where, value);
        else if (key == "stats_unbounded") cfg.policy_settings.stats_unbounded = parse_bool_field(where, value);
        else if (key == "interval_scale") cfg.policy_settings.interval_scale = parse_double_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else if (section == "trace") {
        if (key == "source") {
            if (value == "synthetic") cfg.trace_source = TraceSource::Synthetic;
            else if (value == "files") cfg.trace_source = TraceSource::Files;
            else throw ValidationError(where + ": expected synthetic or files, got `" + value + "`");
        } else if (key == "files") cfg.trace_files = split_list(value);
        else if (key == "low_rbl_rows") cfg.synthetic.num_rows_low_rbl = parse_u64_field(where, value);
        else if (key == "high_rbl_rows") cfg.synthetic.num_rows_high_rbl = parse_u64_field(where, value);
        else if (key == "hits_per_activation") cfg.synthetic.hits_per_activation = parse_u64_field(where, value);
        else if (key == "reuse_factor") cfg.synthetic.reuse_factor = parse_u64_field(where, value);
        else if (key == "write_fraction") cfg.synthetic.write_fraction = parse_double_field(where, value);
        else if (key == "requests_per_core") cfg.synthetic.requests_per_core = parse_u64_field(where, value);
        else throw ValidationError(where + ": unknown key");
    } else {
        throw ValidationError("unknown config section: [" + section + "]");
    }
}

const std::vector<std::pair<std::string, std::string>>& alias_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"policy", "policy.kind"},
        {"miss_thresh", "policy.miss_thresh"},
        {"interval_scale", "policy.interval_scale"},
        {"stats_unbounded", "policy.stats_unbounded"},
        {"mode", "run.mode"},
        {"cores", "run.cores"},
        {"seed", "run.seed"},
        {"dram_rows", "topology.dram_rows"},
        {"pcm_rows", "topology.pcm_rows"},
        {"t_act_dram", "timing.t_act_dram"},
        {"t_act_read_pcm", "timing.t_act_read_pcm"},
        {"t_act_write_pcm", "timing.t_act_write_pcm"},
        {"t_migration", "timing.t_migration"},
        {"write_fraction", "trace.write_fraction"},
        {"reuse_factor", "trace.reuse_factor"},
        {"hits_per_activation", "trace.hits_per_activation"},
        {"requests_per_core", "trace.requests_per_core"},
    };
    return table;
}

} // namespace

void ExperimentConfig::validate() const {
    topology.validate();
    timing.validate();
    energy.validate();
    policy_settings.validate();
    if (cores == 0) throw ValidationError("run.cores: must be >= 1");
    if (clock_ghz <= 0.0) throw ValidationError("run.clock_ghz: must be > 0");
    if (endurance <= 0.0) throw ValidationError("run.endurance: must be > 0");
    if (interval_length() == 0)
        throw ValidationError("policy.interval_scale: interval length rounds to zero cycles");
    if (trace_source == TraceSource::Files) {
        if (trace_files.empty()) throw ValidationError("trace.files: no trace files given");
    } else {
        synthetic.validate();
    }
}

Cycle ExperimentConfig::interval_length() const {
    constexpr double kBaseInterval = 1e7; // cycles
    const double scaled = kBaseInterval * policy_settings.interval_scale;
    if (scaled < 1.0) return 0;
    return static_cast<Cycle>(std::llround(scaled));
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    char num[64];
    auto emit_double = [&](const char* key, double v) {
        std::snprintf(num, sizeof num, "%.17g", v);
        os << key << "=" << num << "\n";
    };
    os << "run.mode=" << to_string(mode) << "\n";
    os << "run.cores=" << cores << "\n";
    os << "run.seed=" << seed << "\n";
    os << "run.run_length=" << run_length << "\n";
    os << "run.warm_start=" << (warm_start ? "true" : "false") << "\n";
    emit_double("run.clock_ghz", clock_ghz);
    emit_double("run.endurance", endurance);
    os << "topology.dram_channels=" << topology.dram_channels << "\n";
    os << "topology.pcm_channels=" << topology.pcm_channels << "\n";
    os << "topology.banks_per_channel=" << topology.banks_per_channel << "\n";
    os << "topology.row_size=" << topology.row_size << "\n";
    os << "topology.dram_rows=" << topology.dram_rows << "\n";
    os << "topology.pcm_rows=" << topology.pcm_rows << "\n";
    os << "timing.t_row_hit=" << timing.t_row_hit << "\n";
    os << "timing.t_act_dram=" << timing.t_act_dram << "\n";
    os << "timing.t_act_read_pcm=" << timing.t_act_read_pcm << "\n";
    os << "timing.t_act_write_pcm=" << timing.t_act_write_pcm << "\n";
    os << "timing.t_bus=" << timing.t_bus << "\n";
    os << "timing.t_migration=" << timing.t_migration << "\n";
    emit_double("energy.e_row_hit", energy.e_row_hit);
    emit_double("energy.e_act_dram", energy.e_act_dram);
    emit_double("energy.e_act_read_pcm", energy.e_act_read_pcm);
    emit_double("energy.e_act_write_pcm", energy.e_act_write_pcm);
    emit_double("energy.e_static_dram", energy.e_static_dram);
    emit_double("energy.e_static_pcm", energy.e_static_pcm);
    emit_double("energy.e_migration", energy.e_migration);
    os << "policy.kind=" << to_string(policy) << "\n";
    os << "policy.miss_thresh=" << policy_settings.miss_thresh << "\n";
    os << "policy.thresh_min=" << policy_settings.thresh_min << "\n";
    os << "policy.thresh_max=" << policy_settings.thresh_max << "\n";
    os << "policy.stats_sets=" << policy_settings.stats_sets << "\n";
    os << "policy.stats_ways=" << policy_settings.stats_ways << "\n";
    os << "policy.stats_unbounded=" << (policy_settings.stats_unbounded ? "true" : "false") << "\n";
    emit_double("policy.interval_scale", policy_settings.interval_scale);
    os << "trace.source=" << (trace_source == TraceSource::Synthetic ? "synthetic" : "files") << "\n";
    if (trace_source == TraceSource::Files) {
        os << "trace.files=";
        for (std::size_t i = 0; i < trace_files.size(); ++i)
            os << (i ? "," : "") << trace_files[i];
        os << "\n";
    } else {
        os << "trace.low_rbl_rows=" << synthetic.num_rows_low_rbl << "\n";
        os << "trace.high_rbl_rows=" << synthetic.num_rows_high_rbl << "\n";
        os << "trace.hits_per_activation=" << synthetic.hits_per_activation << "\n";
        os << "trace.reuse_factor=" << synthetic.reuse_factor << "\n";
        emit_double("trace.write_fraction", synthetic.write_fraction);
        os << "trace.requests_per_core=" << synthetic.requests_per_core << "\n";
    }
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
    const std::string text = canonical_text();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string ExperimentConfig::hash_hex() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("config line " + std::to_string(line_number) +
                                 ": malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(line_number) +
                             ": expected `key = value`: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ParseError("config line " + std::to_string(line_number) +
                             ": key outside any [section]: " + line);
        try {
            set_key(cfg, section, key, value);
        } catch (const ValidationError& e) {
            throw ValidationError("config line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    std::string dotted = key;
    for (const auto& [alias, target] : alias_table()) {
        if (key == alias) {
            dotted = target;
            break;
        }
    }
    const std::size_t dot = dotted.find('.');
    if (dot == std::string::npos) {
        std::ostringstream os;
        os << "unknown parameter `" << key << "`; valid axes:";
        for (const auto& axis : sweep_axes()) os << " " << axis;
        throw ValidationError(os.str());
    }
    set_key(cfg, dotted.substr(0, dot), dotted.substr(dot + 1), value);
}

std::vector<std::string> sweep_axes() {
    std::vector<std::string> axes;
    for (const auto& [alias, target] : alias_table()) axes.push_back(alias);
    axes.push_back("<section>.<key>");
    return axes;
}

} // namespace hysim
