#pragma once

// Exhaustive ground truth for small n: the full state space of a chain, its
// exact transition matrix, and the structural checks run against it.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dagchain/chain.hpp"

namespace dagchain {

inline constexpr int kDefaultEnumerationCap = 5;

/// Arc sets as bitmasks over the n(n-1) ordered pairs (i,j), i != j, taken
/// in lexicographic order: bit 0 is (1,2), bit 1 is (1,3), ... Requires
/// n <= 8.
int pair_bit(int n, Arc a);
std::uint64_t to_mask(const Dag& g);
Dag from_mask(int n, std::uint64_t mask);

/// Every member of a chain's state space, ordered by ascending bitmask.
class StateSpace {
public:
    StateSpace(ChainConfig config, std::vector<std::uint64_t> masks);

    const ChainConfig& config() const noexcept { return config_; }
    int n() const noexcept { return config_.n; }
    std::size_t size() const noexcept { return masks_.size(); }
    std::span<const std::uint64_t> masks() const noexcept { return masks_; }

    Dag state(std::size_t ordinal) const { return from_mask(n(), masks_.at(ordinal)); }
    std::optional<std::size_t> find(const Dag& g) const;
    std::optional<std::size_t> find_mask(std::uint64_t mask) const;

private:
    ChainConfig config_;
    std::vector<std::uint64_t> masks_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Brute-force enumeration with acyclicity (and cap) pruning. Only the
/// variant, reversal toggle and caps of `config` matter. Throws InputError
/// when config.n exceeds `cap`.
StateSpace enumerate(const ChainConfig& config, int cap = kDefaultEnumerationCap);

/// Exact transition matrix: each entry is an integer count of draws out of
/// denominator n^2. Rows are sparse; the diagonal is kept separately.
class TransitionMatrix {
public:
    struct Entry {
        std::size_t to;
        std::uint32_t count;
    };

    /// Off-diagonal rows must be sorted by `to` and must not contain the
    /// row's own index.
    TransitionMatrix(std::uint32_t denominator, std::vector<std::vector<Entry>> rows,
                     std::vector<std::uint32_t> diagonal);

    std::size_t size() const noexcept { return rows_.size(); }
    std::uint32_t denominator() const noexcept { return denominator_; }
    std::span<const Entry> row(std::size_t x) const { return rows_.at(x); }
    std::uint32_t diagonal(std::size_t x) const { return diagonal_.at(x); }
    /// Numerator of P[x][y].
    std::uint32_t count(std::size_t x, std::size_t y) const;

private:
    std::uint32_t denominator_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<std::uint32_t> diagonal_;
};

TransitionMatrix build_matrix(const StateSpace& space);

struct SymmetryResult {
    bool symmetric = true;
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

SymmetryResult check_symmetric(const TransitionMatrix& m);

bool rows_sum_to_one(const TransitionMatrix& m);
bool columns_sum_to_one(const TransitionMatrix& m);
std::uint32_t min_diagonal(const TransitionMatrix& m);
std::uint32_t max_off_diagonal(const TransitionMatrix& m);

/// Strong connectivity of the positive-entry digraph.
bool check_irreducible(const TransitionMatrix& m);

/// Longest shortest transition path over all ordered state pairs; nullopt
/// when the chain is reducible.
std::optional<std::size_t> diameter(const TransitionMatrix& m);

/// Shortest transition path lengths from one state (unreachable = SIZE_MAX).
std::vector<std::size_t> distances_from(const TransitionMatrix& m, std::size_t source);

std::vector<double> point_mass(std::size_t size, std::size_t at);
std::vector<double> uniform_distribution(std::size_t size);
double total_variation_to_uniform(std::span<const double> d);

/// Applies the matrix t times to d (floating point) and returns the total
/// variation distance of the result to the uniform distribution. Throws
/// InputError if d is not a distribution over the space.
double check_convergence(const TransitionMatrix& m, std::span<const double> d, std::uint64_t t);

}  // namespace dagchain
