#include <gtest/gtest.h>

#include <random>

#include "contagion/harness.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace contagion;

TEST(Harness, EmptyNetwork) {
    const auto s = fixture::make({{"a", 100, 50}, {"b", 100, 50}, {"c", 100, 50}});
    const auto r = run_all_seeds(s, ProtocolParams{});
    EXPECT_EQ(r.metrics.contagion_probability, 0.0);
    EXPECT_FALSE(r.metrics.conditional_extent.has_value());
    EXPECT_EQ(r.metrics.max_extent, 0.0);
    EXPECT_EQ(r.extent_histogram.at(0), 3u);
}

TEST(Harness, ChainAllSeeds) {
    const auto r = run_all_seeds(fixture::chain(10), ProtocolParams{});
    EXPECT_DOUBLE_EQ(r.metrics.contagion_probability, 1.0 / 3.0);
    ASSERT_TRUE(r.metrics.conditional_extent.has_value());
    EXPECT_DOUBLE_EQ(*r.metrics.conditional_extent, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(r.metrics.max_extent, 1.0 / 3.0);
}

TEST(Harness, ExogenousHasNoSeed) {
    EXPECT_THROW(run_all_seeds(fixture::chain(10), ProtocolParams{Protocol::exogenous}), std::invalid_argument);
}

TEST(Harness, MetricsAreAPureFold) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = oracle::random_system(rng, 25, 0.15);
        for (auto p : {Protocol::counterparty, Protocol::rollover, Protocol::fire_sale}) {
            const auto r = run_all_seeds(s, ProtocolParams{p, 0.1, 0.3, true}, 3);
            const auto again = summarize(s.size(), r.per_seed_results);
            EXPECT_EQ(again.metrics, r.metrics);
            EXPECT_EQ(again.extent_histogram, r.extent_histogram);
            std::size_t mass = 0;
            for (auto c : r.extent_histogram) mass += c;
            EXPECT_EQ(mass, s.size());
            EXPECT_GE(r.metrics.contagion_probability, 0.0);
            EXPECT_LE(r.metrics.contagion_probability, 1.0);
            if (r.metrics.conditional_extent) {
                EXPECT_GE(r.metrics.max_extent, *r.metrics.conditional_extent);
            }
        }
    }
}

TEST(Harness, ThreadCountDoesNotMatter) {
    std::mt19937_64 rng(53);
    const auto s = oracle::random_system(rng, 60, 0.08);
    const auto one = run_all_seeds(s, ProtocolParams{Protocol::fire_sale, 0.0, 0.2, true}, 1);
    const auto four = run_all_seeds(s, ProtocolParams{Protocol::fire_sale, 0.0, 0.2, true}, 4);
    EXPECT_EQ(one.per_seed_results, four.per_seed_results);
}

TEST(Amplification, ZeroAndDominance) {
    std::mt19937_64 rng(57);
    const auto s = oracle::random_system(rng, 30, 0.15);
    const auto grid = unit_grid(21);
    const auto curve = amplification_curve(s, grid);
    ASSERT_EQ(curve.size(), 21u);
    EXPECT_EQ(curve[0].frac_no_network, 0.0);
    EXPECT_EQ(curve[0].frac_with_network, 0.0);
    EXPECT_FALSE(curve[0].ratio.has_value());
    for (const auto& pt : curve) {
        EXPECT_GE(pt.frac_with_network, pt.frac_no_network);
        if (pt.ratio) {
            EXPECT_GE(*pt.ratio, 1.0);
        }
    }
}

TEST(FireSaleSweep, ZeroCDegenerates) {
    std::mt19937_64 rng(59);
    const auto s = oracle::random_system(rng, 30, 0.15);
    const std::vector<double> grid{0.0, 0.2, 0.5};
    const auto sweep = fire_sale_sweep(s, grid, 2, 2);
    EXPECT_EQ(sweep[0].with_counterparty, run_all_seeds(s, ProtocolParams{}).metrics);
    for (const auto& pt : sweep) {
        EXPECT_GE(pt.with_counterparty.contagion_probability, pt.without_counterparty.contagion_probability);
        EXPECT_GE(pt.p_large_with, pt.p_large_without);
    }
}

TEST(FireSaleSweep, NoCriticalLinksMeansNothingAtZero) {
    // every loan is below the lender's capital
    const auto s = fixture::make({{"a", 1000, 900}, {"b", 1000, 900}, {"c", 1000, 900}}, {{0, 1, 50}, {1, 2, 50}, {2, 0, 50}});
    const std::vector<double> grid{0.0};
    const auto sweep = fire_sale_sweep(s, grid);
    EXPECT_EQ(sweep[0].without_counterparty.contagion_probability, 0.0);
    EXPECT_EQ(sweep[0].with_counterparty.contagion_probability, 0.0);
}

TEST(HistogramTest, BinsAndMass) {
    const std::vector<std::optional<double>> xs{0.0, 0.05, 0.1, 0.999, 1.0, std::nullopt};
    const auto h = Histogram::build(xs, 10);
    EXPECT_EQ(h.counts[0], 2u);
    EXPECT_EQ(h.counts[1], 1u);
    EXPECT_EQ(h.counts[9], 2u);
    EXPECT_EQ(h.undefined, 1u);
    EXPECT_EQ(h.total(), xs.size());
}

TEST(SweepConfigTest, RejectsOutOfRangeGrid) {
    SweepConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.c_grid = {0.5, 1.2};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_EQ(unit_grid().size(), 51u);
    EXPECT_DOUBLE_EQ(unit_grid().back(), 1.0);
}

TEST(NullComparison, IdentityReplica) {
    std::mt19937_64 rng(61);
    const auto s = oracle::random_system(rng, 20, 0.2);
    const auto cmp = null_model_comparison(s, ProtocolParams{}, 1, 9, std::size_t{0}, 20);
    ASSERT_EQ(cmp.replicas.size(), 1u);
    EXPECT_EQ(cmp.replicas[0], cmp.real);
    EXPECT_EQ(cmp.probability.counts[cmp.probability.bin_of(cmp.real.contagion_probability)], 1u);
    EXPECT_EQ(cmp.max_extent.counts[cmp.max_extent.bin_of(cmp.real.max_extent)], 1u);
}

TEST(NullComparison, Reproducible) {
    std::mt19937_64 rng(67);
    const auto s = oracle::random_system(rng, 20, 0.2, 20, 60, 1000);
    const auto a = null_model_comparison(s, ProtocolParams{}, 8, 5, std::nullopt, 10, 1);
    const auto b = null_model_comparison(s, ProtocolParams{}, 8, 5, std::nullopt, 10, 3);
    EXPECT_EQ(a.replicas, b.replicas);
    EXPECT_EQ(a.probability.counts, b.probability.counts);
    EXPECT_EQ(a.probability.total(), 8u);
}

TEST(ProtocolNames, ParseAndPrint) {
    EXPECT_EQ(parse_protocol("asset-shock"), Protocol::exogenous);
    EXPECT_EQ(parse_protocol("fire-sale"), Protocol::fire_sale);
    EXPECT_EQ(parse_protocol(to_string(Protocol::rollover)), Protocol::rollover);
    EXPECT_THROW(parse_protocol("bogus"), std::invalid_argument);
}
