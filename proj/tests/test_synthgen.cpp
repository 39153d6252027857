#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "contagion/netstats.hpp"
#include "contagion/nullmodels.hpp"
#include "contagion/synthgen.hpp"

using namespace contagion;

namespace {

CalibrationProfile seeded(std::uint64_t seed) {
    CalibrationProfile p;
    p.rng_seed = seed;
    return p;
}

}  // namespace

TEST(BoundedPowerlaw, InverseCdf) {
    EXPECT_DOUBLE_EQ(bounded_powerlaw(0.0, 10.0, 1000.0, 0.74), 10.0);
    EXPECT_NEAR(bounded_powerlaw(1.0, 10.0, 1000.0, 0.74), 1000.0, 1e-9);
    // CCDF at x: (x^-a - hi^-a) / (lo^-a - hi^-a)
    const double lo = 10, hi = 1000, a = 0.74, x = bounded_powerlaw(0.3, lo, hi, a);
    EXPECT_NEAR((std::pow(x, -a) - std::pow(hi, -a)) / (std::pow(lo, -a) - std::pow(hi, -a)), 0.7, 1e-12);
}

// Fit window sits a decade and more below the 35e9 cutoff, where the
// truncated law still follows x^-0.74.
TEST(BalanceSheets, AssetTailExponent) {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto sheets = sample_balance_sheets(seeded(seed));
        ASSERT_EQ(sheets.size(), 846u);
        std::vector<double> assets;
        for (const auto& s : sheets) assets.push_back(s.total_assets.euros());
        EXPECT_NEAR(ccdf_powerlaw_exponent(assets, 1e8, 1e9), 0.74, 0.1) << seed;
    }
}

TEST(BalanceSheets, LowLeverageShareAndCapital) {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto sheets = sample_balance_sheets(seeded(seed));
        std::size_t low = 0;
        for (const auto& s : sheets) {
            EXPECT_GT(s.capital().cents(), 0);
            EXPECT_LE(s.liquid_assets, s.total_assets);
            EXPECT_GE(s.liquid_assets.cents(), 0);
            if (leverage(s) < 4.6) ++low;
        }
        EXPECT_NEAR(static_cast<double>(low) / sheets.size(), 71.0 / 836.0, 0.02);
    }
}

TEST(Network, HubAndSpokeShape) {
    for (std::uint64_t seed : {1, 2}) {
        const auto system = generate_system(seeded(seed));
        const auto v = AdjacencyViews::from_exposures(system.exposures());
        const auto r = assortativity(v);
        ASSERT_TRUE(r.has_value());
        EXPECT_GE(*r, -0.72);
        EXPECT_LE(*r, -0.52);
        EXPECT_GE(clustering(v).average, 0.5);

        std::size_t kmax = 0;
        for (std::size_t i = 0; i < v.size(); ++i) kmax = std::max(kmax, v.degree(i));
        std::size_t er_max = 0;
        const double k = mean_degree(v);
        for (std::uint64_t d = 0; d < 1000; ++d) {
            const auto g = erdos_renyi(v.size(), k, false, d);
            for (std::size_t i = 0; i < g.size(); ++i) er_max = std::max(er_max, g.degree(i));
        }
        EXPECT_GE(kmax, 3 * er_max) << "max degree " << kmax << " vs ER " << er_max;
    }
}

TEST(Network, InterbankTotalsFitBalanceSheets) {
    const auto system = generate_system(seeded(4));
    Money volume;
    for (std::size_t i = 0; i < system.size(); ++i) {
        EXPECT_LE(system.exposures().interbank_assets(i), system.sheet(i).total_assets);
        EXPECT_LE(system.exposures().interbank_liabilities(i), system.sheet(i).total_liabilities);
        volume += system.exposures().interbank_assets(i);
    }
    EXPECT_EQ(volume, system.exposures().total_volume());
}

TEST(Generate, Reproducible) {
    const auto a = generate_system(seeded(9));
    const auto b = generate_system(seeded(9));
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == generate_system(seeded(10)));
}

TEST(Generate, ImpossibleTargetFails) {
    auto p = seeded(1);
    p.n_banks = 120;
    p.target_assortativity = 0.9;
    p.assortativity_tolerance = 0.01;
    p.max_retries = 3;
    EXPECT_THROW(generate_system(p), CalibrationFailure);
}

TEST(Profile, Validation) {
    EXPECT_NO_THROW(CalibrationProfile{}.validate());
    auto p = CalibrationProfile{};
    p.interbank_share = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = CalibrationProfile{};
    p.n_banks = 1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = CalibrationProfile{};
    p.asset_range = {Money::from_euros(10), Money::from_euros(5)};
    EXPECT_THROW(p.validate(), std::invalid_argument);
}
