#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dagchain/chain.hpp"
#include "dagchain/report.hpp"

namespace dagchain {

/// How a chain run is turned into samples: discard `burn_in` steps, then
/// record the state every `gap` steps until `count` samples are taken.
/// With `chains` > 1 the count is split across independent chains seeded
/// by derive_seed(config.seed, chain index).
struct SamplingPlan {
    std::uint64_t burn_in = 0;
    std::uint64_t gap = 1;
    std::uint64_t count = 0;
    std::uint64_t chains = 1;
};

/// Heuristic defaults; no mixing bound is known for these chains.
/// burn_in = ceil(10 n^2 ln B) with B = 3^(n(n-1)/2) >= |state space|.
std::uint64_t default_burn_in(int n);
/// n^2: one expected draw per ordered pair.
std::uint64_t default_gap(int n);

enum class TallyMode { automatic, per_state, histogram };

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
};

struct SampleSummary {
    std::uint64_t samples = 0;
    /// Indexed by canonical state ordinal; empty in histogram mode.
    std::vector<std::uint64_t> state_frequencies;
    std::map<std::size_t, std::uint64_t> arc_histogram;
    double mean_arcs = 0.0;
    /// Standard error of mean_arcs, treating samples as independent.
    double mean_arcs_std_error = 0.0;
    std::optional<ChiSquare> chi_square;
    std::optional<double> tv_distance;
};

/// Runs the plan from default_start(config). Per-state tallies enumerate
/// the state space and therefore need n within the oracle cap; automatic
/// mode falls back to histogram mode above it. Throws InputError when
/// per-state mode is requested for too large an n.
SampleSummary sample_chain(const ChainConfig& config, const SamplingPlan& plan,
                           TallyMode mode = TallyMode::automatic);

/// Pearson statistic against the uniform distribution over space_size
/// cells; frequencies of absent cells count as zero. Throws InputError when
/// the expected count per cell is below 5.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> freqs, std::size_t space_size);

/// Quantile of the chi-square distribution.
double chi_square_quantile(double probability, std::size_t dof);

/// Total variation distance between empirical frequencies and uniform.
double empirical_tv_to_uniform(std::span<const std::uint64_t> freqs, std::size_t space_size);

struct ArcProfile {
    std::map<std::size_t, std::uint64_t> histogram;
    std::uint64_t samples = 0;
    double mean = 0.0;
    double std_error = 0.0;
    /// n^2/4; an asymptotic figure, reported for comparison only.
    double quarter_n_squared = 0.0;
};

ArcProfile arc_count_profile(const ChainConfig& config, const SamplingPlan& plan);

/// Histogram rows "arc_count,frequency" with a header line.
void write_histogram_csv(std::ostream& os, const std::map<std::size_t, std::uint64_t>& histogram);

Report summary_report(const SampleSummary& s);

}  // namespace dagchain
