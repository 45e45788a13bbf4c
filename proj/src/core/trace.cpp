#include "core/trace.hpp"

#include <cctype>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "core/device.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

namespace hysim {

namespace {

[[noreturn]] void parse_fail(std::size_t line_number, const std::string& field,
                             const std::string& why) {
    std::ostringstream os;
    os << "line " << line_number << ": " << field << ": " << why;
    throw ParseError(os.str());
}

bool parse_u64(std::string_view s, std::uint64_t& out, int base) {
    if (s.empty()) return false;
    std::uint64_t value = 0;
    for (char c : s) {
        std::uint64_t digit;
        if (c >= '0' && c <= '9') digit = static_cast<std::uint64_t>(c - '0');
        else if (base == 16 && c >= 'a' && c <= 'f') digit = static_cast<std::uint64_t>(c - 'a' + 10);
        else if (base == 16 && c >= 'A' && c <= 'F') digit = static_cast<std::uint64_t>(c - 'A' + 10);
        else return false;
        value = value * static_cast<std::uint64_t>(base) + digit;
    }
    out = value;
    return true;
}

} // namespace

MemoryRequest parse_trace_line(std::string_view line, std::size_t line_number) {
    // Exactly four single-space separated fields; no leading/trailing blanks.
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t sp = line.find(' ', start);
        if (sp == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, sp - start));
        start = sp + 1;
    }
    if (fields.size() != 4)
        parse_fail(line_number, "request", "expected `<core_id> <compute_gap> <R|W> <hex address>`");

    MemoryRequest req;
    std::uint64_t core = 0;
    if (!parse_u64(fields[0], core, 10) || core > 0xFFFFFFFFull)
        parse_fail(line_number, "core_id", "not a non-negative integer: `" + std::string(fields[0]) + "`");
    req.core_id = static_cast<std::uint32_t>(core);

    if (!fields[1].empty() && fields[1][0] == '-')
        parse_fail(line_number, "compute_gap", "negative gap: `" + std::string(fields[1]) + "`");
    if (!parse_u64(fields[1], req.compute_gap, 10))
        parse_fail(line_number, "compute_gap", "not a non-negative integer: `" + std::string(fields[1]) + "`");

    if (fields[2] == "R") req.kind = AccessKind::Read;
    else if (fields[2] == "W") req.kind = AccessKind::Write;
    else parse_fail(line_number, "kind", "expected R or W, got `" + std::string(fields[2]) + "`");

    std::string_view addr = fields[3];
    if (addr.size() < 3 || addr[0] != '0' || (addr[1] != 'x' && addr[1] != 'X'))
        parse_fail(line_number, "address", "expected 0x-prefixed hex: `" + std::string(addr) + "`");
    if (!parse_u64(addr.substr(2), req.address, 16))
        parse_fail(line_number, "address", "invalid hex digits: `" + std::string(addr) + "`");
    return req;
}

std::string format_trace_line(const MemoryRequest& req) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%u %llu %c 0x%llX", req.core_id,
                  static_cast<unsigned long long>(req.compute_gap),
                  req.kind == AccessKind::Read ? 'R' : 'W',
                  static_cast<unsigned long long>(req.address));
    return buf;
}

std::vector<MemoryRequest> parse_trace_text(std::string_view text, std::string_view origin) {
    std::vector<MemoryRequest> out;
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos) ? text.substr(pos)
                                                               : text.substr(pos, nl - pos);
        ++line_number;
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        if (line.empty() || line[0] == '#') continue;
        try {
            out.push_back(parse_trace_line(line, line_number));
        } catch (const ParseError& e) {
            if (origin.empty()) throw;
            throw ParseError(std::string(origin) + ": " + e.what());
        }
    }
    return out;
}

std::vector<MemoryRequest> load_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open trace file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trace_text(buf.str(), path);
}

void write_trace_file(const std::string& path, const std::vector<MemoryRequest>& requests,
                      const std::string& header_comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open trace file for writing: " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    for (const auto& req : requests) out << format_trace_line(req) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::vector<MemoryRequest>> split_by_core(const std::vector<MemoryRequest>& requests,
                                                      std::uint32_t num_cores) {
    std::vector<std::vector<MemoryRequest>> per_core(num_cores);
    for (std::size_t i = 0; i < requests.size(); ++i) {
        const auto& req = requests[i];
        if (req.core_id >= num_cores) {
            std::ostringstream os;
            os << "request " << i << ": core_id " << req.core_id << " >= configured core count "
               << num_cores;
            throw ValidationError(os.str());
        }
        per_core[req.core_id].push_back(req);
    }
    return per_core;
}

void SyntheticSpec::validate() const {
    if (write_fraction < 0.0 || write_fraction > 1.0)
        throw ValidationError("trace.write_fraction: must be within [0,1]");
    if (num_rows_low_rbl == 0 && num_rows_high_rbl == 0)
        throw ValidationError("trace.num_rows_low_rbl/num_rows_high_rbl: both zero, trace would be empty");
    if (num_rows_high_rbl > 0 && hits_per_activation == 0)
        throw ValidationError("trace.hits_per_activation: must be >= 1 when high-RBL rows exist");
    if (reuse_factor == 0)
        throw ValidationError("trace.reuse_factor: must be >= 1");
}

namespace {

// A stream is an ordered list of bursts; interleaving picks bursts at
// random across streams but never reorders within one. Low-RBL accesses
// form a single stream so their round-robin order survives, which is
// what forces every visit in the shared bank to miss.
struct Burst {
    RowId row;
    std::uint64_t accesses;
};

struct Stream {
    std::deque<Burst> bursts;
};

} // namespace

std::vector<std::vector<MemoryRequest>> generate_synthetic(const SyntheticSpec& spec,
                                                           const Topology& topo,
                                                           std::uint32_t num_cores) {
    spec.validate();
    if (num_cores == 0) throw ValidationError("run.cores: must be >= 1");

    const std::uint64_t stride = topo.bank_count(Device::Pcm);
    // One spare block per core for the conflict filler row.
    const std::uint64_t blocks_per_core = spec.num_rows_low_rbl + spec.num_rows_high_rbl + 1;
    const std::uint64_t rows_needed = num_cores * blocks_per_core * stride;
    if (rows_needed > topo.pcm_rows) {
        std::ostringstream os;
        os << "topology.pcm_rows: synthetic working set needs " << rows_needed << " rows, have "
           << topo.pcm_rows;
        throw ValidationError(os.str());
    }

    Rng rng(spec.rng_seed);
    std::vector<std::vector<MemoryRequest>> traces(num_cores);

    for (std::uint32_t core = 0; core < num_cores; ++core) {
        const std::uint64_t base_block = static_cast<std::uint64_t>(core) * blocks_per_core;
        const std::uint64_t low_residue = core % stride;

        std::vector<RowId> low_rows;
        for (std::uint64_t j = 0; j < spec.num_rows_low_rbl; ++j)
            low_rows.push_back((base_block + j) * stride + low_residue);
        const RowId filler_row = (base_block + blocks_per_core - 1) * stride + low_residue;

        std::vector<RowId> high_rows;
        for (std::uint64_t j = 0; j < spec.num_rows_high_rbl; ++j) {
            // Keep high-RBL rows out of the low-RBL bank when more than
            // one bank exists.
            std::uint64_t residue = low_residue;
            if (stride > 1) residue = (low_residue + 1 + (j % (stride - 1))) % stride;
            high_rows.push_back((base_block + spec.num_rows_low_rbl + j) * stride + residue);
        }

        std::map<RowId, std::uint64_t> visit_count;
        auto emit = [&](RowId row) {
            const std::uint64_t column =
                (visit_count[row]++ * kLineBytes) % topo.row_size;
            MemoryRequest req;
            req.core_id = core;
            req.kind = rng.chance(spec.write_fraction) ? AccessKind::Write : AccessKind::Read;
            req.address = row * topo.row_size + column;
            req.compute_gap = rng.below(8);
            traces[core].push_back(req);
        };

        auto build_epoch = [&]() {
            std::vector<Stream> streams;
            if (!low_rows.empty()) {
                Stream low;
                for (std::uint64_t rep = 0; rep < spec.reuse_factor; ++rep) {
                    for (RowId r : low_rows) low.bursts.push_back(Burst{r, 1});
                    if (low_rows.size() == 1) low.bursts.push_back(Burst{filler_row, 1});
                }
                streams.push_back(std::move(low));
            }
            for (RowId r : high_rows) {
                Stream s;
                for (std::uint64_t rep = 0; rep < spec.reuse_factor; ++rep)
                    s.bursts.push_back(Burst{r, spec.hits_per_activation});
                streams.push_back(std::move(s));
            }
            return streams;
        };

        const std::uint64_t target = spec.requests_per_core;
        std::uint64_t emitted = 0;
        bool first_epoch = true;
        while (first_epoch || (target > 0 && emitted < target)) {
            first_epoch = false;
            auto streams = build_epoch();
            std::uint64_t remaining_bursts = 0;
            for (const auto& s : streams) remaining_bursts += s.bursts.size();
            if (remaining_bursts == 0)
                throw ValidationError("trace: synthetic spec produces an empty epoch");
            while (remaining_bursts > 0 && (target == 0 || emitted < target)) {
                std::uint64_t pick = rng.below(remaining_bursts);
                for (auto& s : streams) {
                    if (pick < s.bursts.size()) {
                        Burst burst = s.bursts.front();
                        s.bursts.pop_front();
                        --remaining_bursts;
                        for (std::uint64_t a = 0; a < burst.accesses; ++a) {
                            if (target > 0 && emitted >= target) break;
                            emit(burst.row);
                            ++emitted;
                        }
                        break;
                    }
                    pick -= s.bursts.size();
                }
            }
        }
    }
    return traces;
}

std::map<RowId, RowProfile> trace_rbl_profile(const std::vector<MemoryRequest>& requests,
                                              const Topology& topo) {
    std::map<RowId, RowProfile> profile;
    std::vector<BankState> banks(topo.bank_count(Device::Pcm));
    for (const auto& req : requests) {
        const RowId row = map_address(req.address, topo).row;
        BankState& bank = banks[topo.bank_of(Device::Pcm, row).flat];
        const RowOutcome outcome = bank_access(bank, row);
        auto& entry = profile[row];
        ++entry.accesses;
        if (outcome == RowOutcome::Miss) ++entry.row_misses;
    }
    return profile;
}

std::string profile_to_csv(const std::map<RowId, RowProfile>& profile) {
    std::ostringstream os;
    os << "row,accesses,row_misses\n";
    for (const auto& [row, stats] : profile)
        os << row << "," << stats.accesses << "," << stats.row_misses << "\n";
    return os.str();
}

} // namespace hysim
