#include "dagchain/stats.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "dagchain/oracle.hpp"
#include "parallel.hpp"

namespace dagchain {

std::uint64_t default_burn_in(int n) {
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    return static_cast<std::uint64_t>(std::ceil(10.0 * n * n * pairs * std::log(3.0)));
}

std::uint64_t default_gap(int n) {
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

namespace {

struct Tally {
    std::vector<std::uint64_t> states;
    std::map<std::size_t, std::uint64_t> arcs;
};

Tally run_one(const ChainConfig& config, std::uint64_t seed, const SamplingPlan& plan,
              std::uint64_t count, const StateSpace* space) {
    ChainConfig c = config;
    c.seed = seed;
    Chain chain(c, default_start(c));
    Tally t;
    if (space) {
        t.states.assign(space->size(), 0);
    }
    chain.advance(plan.burn_in);
    for (std::uint64_t s = 0; s < count; ++s) {
        if (s > 0) {
            chain.advance(plan.gap);
        }
        const Dag& g = chain.state();
        ++t.arcs[g.arc_count()];
        if (space) {
            const auto ordinal = space->find(g);
            if (!ordinal) {
                throw std::logic_error("sampled state outside the enumerated space");
            }
            ++t.states[*ordinal];
        }
    }
    return t;
}

void arc_moments(const std::map<std::size_t, std::uint64_t>& hist, std::uint64_t samples,
                 double& mean, double& std_error) {
    mean = 0.0;
    std_error = 0.0;
    if (samples == 0) {
        return;
    }
    double sum = 0.0;
    for (const auto& [arcs, freq] : hist) {
        sum += static_cast<double>(arcs) * static_cast<double>(freq);
    }
    mean = sum / static_cast<double>(samples);
    if (samples < 2) {
        return;
    }
    double sq = 0.0;
    for (const auto& [arcs, freq] : hist) {
        const double d = static_cast<double>(arcs) - mean;
        sq += d * d * static_cast<double>(freq);
    }
    const double variance = sq / static_cast<double>(samples - 1);
    std_error = std::sqrt(variance / static_cast<double>(samples));
}

}  // namespace

SampleSummary sample_chain(const ChainConfig& config, const SamplingPlan& plan, TallyMode mode) {
    config.validate();
    if (plan.chains == 0) {
        throw InputError("at least one chain is required");
    }
    if (plan.gap == 0 && plan.count > 1) {
        throw InputError("sampling gap must be positive");
    }
    std::optional<StateSpace> space;
    if (mode == TallyMode::per_state ||
        (mode == TallyMode::automatic && config.n <= kDefaultEnumerationCap)) {
        if (config.n > kDefaultEnumerationCap) {
            throw InputError("per-state tallies need n <= " +
                             std::to_string(kDefaultEnumerationCap) +
                             "; use histogram mode for n = " + std::to_string(config.n));
        }
        space = enumerate(config);
    }

    std::vector<Tally> tallies(plan.chains);
    detail::parallel_for(plan.chains, [&](std::size_t c) {
        const std::uint64_t share = plan.count / plan.chains + (c < plan.count % plan.chains);
        const std::uint64_t seed = plan.chains == 1 ? config.seed : derive_seed(config.seed, c);
        tallies[c] = run_one(config, seed, plan, share, space ? &*space : nullptr);
    });

    SampleSummary s;
    s.samples = plan.count;
    if (space) {
        s.state_frequencies.assign(space->size(), 0);
    }
    for (const Tally& t : tallies) {
        for (std::size_t k = 0; k < t.states.size(); ++k) {
            s.state_frequencies[k] += t.states[k];
        }
        for (const auto& [arcs, freq] : t.arcs) {
            s.arc_histogram[arcs] += freq;
        }
    }
    arc_moments(s.arc_histogram, s.samples, s.mean_arcs, s.mean_arcs_std_error);
    if (space && s.samples > 0) {
        s.tv_distance = empirical_tv_to_uniform(s.state_frequencies, space->size());
        const double expected = static_cast<double>(s.samples) / static_cast<double>(space->size());
        if (expected >= 5.0) {
            s.chi_square = chi_square_uniform(s.state_frequencies, space->size());
        }
    }
    return s;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> freqs, std::size_t space_size) {
    if (space_size < 2 || freqs.size() > space_size) {
        throw InputError("chi-square needs at least two cells covering all observations");
    }
    std::uint64_t total = 0;
    for (std::uint64_t f : freqs) {
        total += f;
    }
    const double expected = static_cast<double>(total) / static_cast<double>(space_size);
    if (expected < 5.0) {
        throw InputError("expected count per cell is " + std::to_string(expected) +
                         " < 5; draw a larger sample");
    }
    double stat = 0.0;
    for (std::size_t k = 0; k < space_size; ++k) {
        const double obs = k < freqs.size() ? static_cast<double>(freqs[k]) : 0.0;
        stat += (obs - expected) * (obs - expected) / expected;
    }
    return {stat, space_size - 1};
}

double chi_square_quantile(double probability, std::size_t dof) {
    const boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::quantile(dist, probability);
}

double empirical_tv_to_uniform(std::span<const std::uint64_t> freqs, std::size_t space_size) {
    std::uint64_t total = 0;
    for (std::uint64_t f : freqs) {
        total += f;
    }
    if (total == 0 || space_size == 0) {
        throw InputError("empty sample");
    }
    const double u = 1.0 / static_cast<double>(space_size);
    double sum = 0.0;
    for (std::size_t k = 0; k < space_size; ++k) {
        const double p = k < freqs.size() ? static_cast<double>(freqs[k]) / total : 0.0;
        sum += std::abs(p - u);
    }
    return 0.5 * sum;
}

ArcProfile arc_count_profile(const ChainConfig& config, const SamplingPlan& plan) {
    const SampleSummary s = sample_chain(config, plan, TallyMode::histogram);
    ArcProfile p;
    p.histogram = s.arc_histogram;
    p.samples = s.samples;
    p.mean = s.mean_arcs;
    p.std_error = s.mean_arcs_std_error;
    p.quarter_n_squared = config.n * config.n / 4.0;
    return p;
}

void write_histogram_csv(std::ostream& os, const std::map<std::size_t, std::uint64_t>& histogram) {
    os << "arc_count,frequency\n";
    for (const auto& [arcs, freq] : histogram) {
        os << arcs << ',' << freq << '\n';
    }
}

Report summary_report(const SampleSummary& s) {
    Report r;
    r.check = "sample";
    r.passed = true;
    r.add("samples", static_cast<std::int64_t>(s.samples));
    r.add("mean_arcs", s.mean_arcs);
    r.add("mean_arcs_std_error", s.mean_arcs_std_error);
    if (!s.state_frequencies.empty()) {
        r.add("states", static_cast<std::int64_t>(s.state_frequencies.size()));
    }
    if (s.chi_square) {
        r.add("chi_square", s.chi_square->statistic);
        r.add("dof", static_cast<std::int64_t>(s.chi_square->dof));
    }
    if (s.tv_distance) {
        r.add("tv_distance", *s.tv_distance);
    }
    return r;
}

}  // namespace dagchain
