#include "dagchain/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "dagchain/oracle.hpp"
#include "support.hpp"

namespace dagchain {
namespace {

ChainConfig config(int n, Variant v, std::uint64_t seed = 1) {
    ChainConfig c;
    c.n = n;
    c.variant = v;
    c.seed = seed;
    return c;
}

double exact_mean_arcs(int n) {
    const auto all = testing::all_dags_brute(n);
    double sum = 0.0;
    for (const Dag& g : all) sum += static_cast<double>(g.arc_count());
    return sum / static_cast<double>(all.size());
}

TEST(ChiSquare, UniformIsZero) {
    const std::vector<std::uint64_t> f(10, 50);
    const ChiSquare c = chi_square_uniform(f, 10);
    EXPECT_DOUBLE_EQ(c.statistic, 0.0);
    EXPECT_EQ(c.dof, 9u);
}

TEST(ChiSquare, TwoCells) {
    const std::vector<std::uint64_t> f{600, 400};
    const ChiSquare c = chi_square_uniform(f, 2);
    EXPECT_DOUBLE_EQ(c.statistic, 40.0);
    EXPECT_EQ(c.dof, 1u);
}

TEST(ChiSquare, MissingCellsCountAsZero) {
    const std::vector<std::uint64_t> f{10, 10};
    // Expected 20/4 = 5 per cell: (5^2 + 5^2 + 5^2 + 5^2) / 5 = 20.
    EXPECT_DOUBLE_EQ(chi_square_uniform(f, 4).statistic, 20.0);
}

TEST(ChiSquare, SmallExpectedCountIsAnError) {
    const std::vector<std::uint64_t> f{4, 4, 4};
    EXPECT_THROW(chi_square_uniform(f, 3), InputError);
    EXPECT_THROW(chi_square_uniform(f, 1), InputError);
}

TEST(ChiSquare, Quantiles) {
    EXPECT_NEAR(chi_square_quantile(0.95, 1), 3.841459, 1e-5);
    EXPECT_NEAR(chi_square_quantile(0.5, 2), 2.0 * std::log(2.0), 1e-9);
    EXPECT_NEAR(chi_square_quantile(0.001, 17), 4.41609, 1e-3);
    EXPECT_NEAR(chi_square_quantile(0.999, 17), 40.7902, 1e-3);
}

TEST(EmpiricalTv, Examples) {
    const std::vector<std::uint64_t> even{5, 5};
    EXPECT_DOUBLE_EQ(empirical_tv_to_uniform(even, 2), 0.0);
    const std::vector<std::uint64_t> skewed{10};
    EXPECT_DOUBLE_EQ(empirical_tv_to_uniform(skewed, 4), 0.75);
    const std::vector<std::uint64_t> none{0, 0};
    EXPECT_THROW(empirical_tv_to_uniform(none, 2), InputError);
}

TEST(DefaultPlan, Heuristics) {
    EXPECT_EQ(default_gap(5), 25u);
    // 10 * 9 * 3 * ln 3 = 296.6...
    EXPECT_EQ(default_burn_in(3), 297u);
}

TEST(SampleChain, TwoVertexFrequencies) {
    const SampleSummary s =
        sample_chain(config(2, Variant::connected, 11), {100, 4, 20000, 1}, TallyMode::per_state);
    ASSERT_EQ(s.state_frequencies.size(), 2u);
    EXPECT_EQ(s.state_frequencies[0] + s.state_frequencies[1], 20000u);
    // Samples 4 steps apart have correlation (1/2)^4; 6 binomial sigmas.
    const double sigma = std::sqrt(20000 * 0.25);
    EXPECT_NEAR(static_cast<double>(s.state_frequencies[0]), 10000.0, 6 * sigma);
}

TEST(SampleChain, ThreeVertexConnectedIsUniform) {
    const SampleSummary s = sample_chain(config(3, Variant::connected, 5), {10000, 50, 100000, 1},
                                         TallyMode::per_state);
    ASSERT_TRUE(s.chi_square.has_value());
    ASSERT_TRUE(s.tv_distance.has_value());
    EXPECT_EQ(s.chi_square->dof, 17u);
    EXPECT_GE(s.chi_square->statistic, chi_square_quantile(0.001, 17));
    EXPECT_LE(s.chi_square->statistic, chi_square_quantile(0.999, 17));
    EXPECT_LT(*s.tv_distance, 0.01);
}

TEST(SampleChain, MeanArcsMatchesEnumeration) {
    for (int n : {3, 4}) {
        const double exact = exact_mean_arcs(n);
        // One sample per chain keeps the samples independent.
        const SampleSummary s =
            sample_chain(config(n, Variant::unrestricted, 17), {default_burn_in(n), 1, 20000, 20000});
        EXPECT_NEAR(s.mean_arcs, exact, 3 * s.mean_arcs_std_error) << n;
    }
}

TEST(SampleChain, Deterministic) {
    const SamplingPlan plan{100, 9, 3000, 3};
    const SampleSummary a = sample_chain(config(3, Variant::connected, 99), plan);
    const SampleSummary b = sample_chain(config(3, Variant::connected, 99), plan);
    EXPECT_EQ(a.state_frequencies, b.state_frequencies);
    EXPECT_EQ(a.arc_histogram, b.arc_histogram);
    EXPECT_EQ(a.mean_arcs, b.mean_arcs);
}

TEST(SampleChain, ChainsShareTheCount) {
    const SampleSummary s = sample_chain(config(4, Variant::connected, 3), {50, 16, 1001, 4});
    EXPECT_EQ(s.samples, 1001u);
    std::uint64_t total = 0;
    for (std::uint64_t f : s.state_frequencies) total += f;
    EXPECT_EQ(total, 1001u);
}

TEST(SampleChain, HistogramAndPerStateModesAgree) {
    const SamplingPlan plan{200, 16, 4000, 2};
    const SampleSummary a = sample_chain(config(4, Variant::unrestricted, 8), plan, TallyMode::per_state);
    const SampleSummary b = sample_chain(config(4, Variant::unrestricted, 8), plan, TallyMode::histogram);
    EXPECT_TRUE(b.state_frequencies.empty());
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_EQ(a.arc_histogram, b.arc_histogram);
    EXPECT_DOUBLE_EQ(a.mean_arcs, b.mean_arcs);
}

TEST(SampleChain, PerStateAboveCapIsAnError) {
    EXPECT_THROW(sample_chain(config(7, Variant::unrestricted), {0, 1, 10, 1}, TallyMode::per_state),
                 InputError);
    EXPECT_NO_THROW(sample_chain(config(7, Variant::unrestricted), {0, 1, 10, 1}));
    EXPECT_THROW(sample_chain(config(3, Variant::unrestricted), {0, 1, 10, 0}), InputError);
}

TEST(ArcProfile, SupportRespectsCaps) {
    ChainConfig c = config(7, Variant::unrestricted, 4);
    c.max_arcs = 5;
    const ArcProfile p = arc_count_profile(c, {500, 10, 2000, 1});
    EXPECT_LE(p.histogram.rbegin()->first, 5u);
    EXPECT_DOUBLE_EQ(p.quarter_n_squared, 49.0 / 4.0);
}

TEST(ArcProfile, ConnectedSupport) {
    const int n = 7;
    const ArcProfile p = arc_count_profile(config(n, Variant::connected, 6), {500, 10, 2000, 1});
    EXPECT_GE(p.histogram.begin()->first, static_cast<std::size_t>(n - 1));
    EXPECT_LE(p.histogram.rbegin()->first, static_cast<std::size_t>(n * (n - 1) / 2));
}

TEST(HistogramCsv, Format) {
    std::ostringstream os;
    write_histogram_csv(os, {{2, 5}, {3, 7}});
    EXPECT_EQ(os.str(), "arc_count,frequency\n2,5\n3,7\n");
}

TEST(SummaryReport, Fields) {
    const SampleSummary s = sample_chain(config(3, Variant::connected, 2), {100, 9, 200, 1});
    const Report r = summary_report(s);
    const std::string json = r.to_json();
    EXPECT_NE(json.find("\"samples\":200"), std::string::npos);
    EXPECT_NE(json.find("\"chi_square\""), std::string::npos);
}

}  // namespace
}  // namespace dagchain
