#pragma once

#include <cstdint>
#include <random>

#include "dagchain/dag.hpp"

namespace dagchain {

// Reproducibility contract
// ------------------------
// The engine is std::mt19937_64 constructed from the 64-bit seed; its output
// sequence is fixed by the C++ standard. Each step consumes engine outputs x
// and maps them to an index in [0, n*n) by rejection: x is rejected while
// x >= 2^64 - (2^64 mod n*n), otherwise index = x mod n*n. The drawn pair is
// (index / n + 1, index % n + 1). No std::*_distribution is involved, so the
// stream is identical on every conforming platform.

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for the index-th independent chain derived from a master seed:
/// splitmix64(seed + 0x9E3779B97F4A7C15 * (index + 1)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform draws from V x V, diagonal included.
class PairSampler {
public:
    PairSampler(int n, std::uint64_t seed);

    Arc operator()();

private:
    std::mt19937_64 engine_;
    std::uint64_t n_;
    std::uint64_t cells_;
    std::uint64_t limit_;
};

}  // namespace dagchain
