#include "dagchain/rng.hpp"

namespace dagchain {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

PairSampler::PairSampler(int n, std::uint64_t seed)
    : engine_(seed), n_(static_cast<std::uint64_t>(n)), cells_(n_ * n_) {
    // 2^64 mod cells, computed without overflow.
    const std::uint64_t rem = (~std::uint64_t{0} % cells_ + 1) % cells_;
    limit_ = rem == 0 ? 0 : ~std::uint64_t{0} - rem + 1;
}

Arc PairSampler::operator()() {
    std::uint64_t x = engine_();
    while (limit_ != 0 && x >= limit_) {
        x = engine_();
    }
    const std::uint64_t idx = x % cells_;
    return {static_cast<Vertex>(idx / n_ + 1), static_cast<Vertex>(idx % n_ + 1)};
}

}  // namespace dagchain
