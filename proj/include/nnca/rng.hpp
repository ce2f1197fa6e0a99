#pragma once

#include <cstdint>

namespace nnca {

/// Counter-based generator: draw i of stream s under key k is
/// splitmix64_mix(key(k, s) + (i + 1) * golden_gamma). Any draw of any stream
/// is addressable without generating its predecessors, so replicates can be
/// reproduced independently of the order they are run in.
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix(mix(seed) ^ (stream * 0xD1342543DE82EF95ULL + 0x632BE59BD9B4E019ULL))) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t counter) const noexcept { return mix(key_ + (counter + 1) * kGamma); }

    std::uint64_t next() noexcept { return at(counter_++); }

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box-Muller (consumes two draws).
    double normal() noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace nnca
