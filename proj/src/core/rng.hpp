#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

namespace hysim {

// Deterministic RNG wrapper. Avoids std distributions and std::shuffle,
// whose outputs are implementation-defined; trace generation must be
// bit-reproducible from the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        return next_u64() % n;
    }

    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        const double scaled = p * 9007199254740992.0; // 2^53
        return (next_u64() >> 11) < static_cast<std::uint64_t>(scaled);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace hysim
