#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "contagion/netstats.hpp"
#include "contagion/nullmodels.hpp"
#include "oracles.hpp"

using namespace contagion;

namespace {

std::vector<std::size_t> degrees(const ExposureMatrix& m, bool out) {
    std::vector<std::size_t> d(m.size(), 0);
    for (const auto& e : m.entries()) ++d[out ? e.borrower : e.lender];
    return d;
}

// Per-bank sorted weight lists on the retaining side.
std::vector<std::vector<std::int64_t>> weights(const ExposureMatrix& m, Retention r) {
    std::vector<std::vector<std::int64_t>> w(m.size());
    for (const auto& e : m.entries()) w[r == Retention::asset_side ? e.lender : e.borrower].push_back(e.amount.cents());
    for (auto& v : w) std::sort(v.begin(), v.end());
    return w;
}

// Large non-interbank positions so any rewired exposure still fits.
BankingSystem roomy(std::mt19937_64& rng, std::size_t n = 30, double p = 0.15) {
    const auto s = oracle::random_system(rng, n, p, 40, 200);
    std::vector<BalanceSheet> sheets(s.balance_sheets().begin(), s.balance_sheets().end());
    for (auto& b : sheets) {
        b.total_assets += Money(10000);
        b.total_liabilities += Money(10000);
    }
    return BankingSystem(std::move(sheets), s.exposures());
}

}  // namespace

TEST(ErdosRenyi, Extremes) {
    const auto empty = erdos_renyi(20, 0.0, false, 1);
    EXPECT_EQ(empty.undirected_edge_count(), 0u);
    const auto full = erdos_renyi(20, 19.0, false, 1);
    EXPECT_EQ(full.undirected_edge_count(), 20u * 19u / 2u);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(full.degree(i), 19u);
    EXPECT_THROW(erdos_renyi(1, 0.0, false, 1), std::invalid_argument);
    EXPECT_THROW(erdos_renyi(10, 9.5, false, 1), std::invalid_argument);
}

TEST(ErdosRenyi, MeanDegreeWithinThreeStandardErrors) {
    const std::size_t n = 100, draws = 1000;
    const double k = 6.0;
    const double p = k / (n - 1);
    double sum = 0.0;
    for (std::size_t d = 0; d < draws; ++d) sum += mean_degree(erdos_renyi(n, k, false, d));
    // mean degree = 2 M / n with M ~ Binomial(n(n-1)/2, p)
    const double pairs = n * (n - 1) / 2.0;
    const double se = 2.0 / n * std::sqrt(pairs * p * (1 - p)) / std::sqrt(static_cast<double>(draws));
    EXPECT_NEAR(sum / draws, k, 3 * se);
}

TEST(ErdosRenyi, DirectedHasOneOrientationPerLink) {
    const auto g = erdos_renyi(50, 8.0, true, 3);
    for (std::size_t i = 0; i < 50; ++i)
        for (auto j : g.lia(i)) EXPECT_FALSE(g.has_lia_edge(j, i));
}

TEST(Rewire, ZeroBudgetIsIdentity) {
    std::mt19937_64 rng(101);
    const auto s = roomy(rng);
    for (auto r : {Retention::asset_side, Retention::liability_side}) {
        EXPECT_EQ(rewire(s, RewiringPolicy{r, std::size_t{0}, 4}), s);
    }
}

TEST(Rewire, Invariants) {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = roomy(rng);
        for (auto r : {Retention::asset_side, Retention::liability_side}) {
            RewireStats stats;
            const auto out = rewire(s, RewiringPolicy{r, std::nullopt, static_cast<std::uint64_t>(trial)}, &stats);
            EXPECT_EQ(stats.attempted, default_swap_budget(s));
            EXPECT_EQ(degrees(out.exposures(), true), degrees(s.exposures(), true));
            EXPECT_EQ(degrees(out.exposures(), false), degrees(s.exposures(), false));
            EXPECT_EQ(weights(out.exposures(), r), weights(s.exposures(), r));
            EXPECT_EQ(capitals(out), capitals(s));
            EXPECT_EQ(out.exposures().total_volume(), s.exposures().total_volume());
            for (const auto& e : out.exposures().entries()) EXPECT_NE(e.borrower, e.lender);
            if (r == Retention::asset_side) {
                for (std::size_t i = 0; i < s.size(); ++i)
                    EXPECT_EQ(out.sheet(i).total_assets, s.sheet(i).total_assets);
            }
        }
    }
}

TEST(Rewire, ActuallyMixes) {
    std::mt19937_64 rng(107);
    const auto s = roomy(rng, 40, 0.1);
    const auto out = rewire_exposures(s.exposures(), RewiringPolicy{Retention::asset_side, std::nullopt, 1});
    std::size_t moved = 0;
    for (const auto& e : out.entries()) moved += s.exposures().amount(e.borrower, e.lender).cents() == 0;
    EXPECT_GT(moved, out.entry_count() / 4);
}

TEST(Rewire, Reproducible) {
    std::mt19937_64 rng(109);
    const auto s = roomy(rng);
    const auto a = generate_replica(s, Retention::asset_side, std::nullopt, 77, 3);
    const auto b = generate_replica(s, Retention::asset_side, std::nullopt, 77, 3);
    EXPECT_EQ(a.system, b.system);
    EXPECT_EQ(a.attempts, b.attempts);
    const auto c = generate_replica(s, Retention::asset_side, std::nullopt, 77, 4);
    EXPECT_FALSE(a.system == c.system);
}

TEST(Rewire, InfeasibleReplicaReported) {
    // c keeps its 5000 funding line; moving it onto b exceeds b's assets
    const BankingSystem s({{"a", Money(200), Money(100), Money(0)},
                           {"b", Money(2000), Money(100), Money(0)},
                           {"c", Money(20000), Money(10000), Money(0)},
                           {"d", Money(6000), Money(100), Money(0)}},
                          ExposureMatrix(4, {{0, 1, Money(100)}, {2, 3, Money(5000)}}));
    std::size_t infeasible = 0;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        try {
            EXPECT_EQ(rewire(s, RewiringPolicy{Retention::liability_side, std::size_t{1}, seed}), s);
        } catch (const InfeasibleAdjustment&) {
            ++infeasible;
        }
    }
    EXPECT_GT(infeasible, 0u);
    // resampling lands on the untouched, feasible draw
    const auto r = generate_replica(s, Retention::liability_side, std::size_t{1}, 5, 0);
    EXPECT_EQ(r.system, s);
    EXPECT_GE(r.attempts, 1u);
}
