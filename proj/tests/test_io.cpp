#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "contagion/io.hpp"
#include "contagion/synthgen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tmpdir.hpp"

using namespace contagion;

namespace {

BankingSystem parse(const std::string& balance, const std::string& exposures) {
    std::istringstream b(balance), e(exposures);
    return read_system(b, e, "balance.csv", "exposures.csv");
}

const std::string kBalance =
    "bank_id,total_assets,total_liabilities,liquid_assets\n"
    "A,1000.00,900,50.5\n"
    "B,500,400.25,0\n";

}  // namespace

TEST(Load, TwoBankToy) {
    const auto s = parse(kBalance, "from_id,to_id,amount\nB,A,100.01\n");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.sheet(0).liquid_assets.cents(), 5050);
    EXPECT_EQ(s.sheet(1).total_liabilities.cents(), 40025);
    EXPECT_EQ(s.exposures().amount(1, 0).cents(), 10001);
}

TEST(Load, RoundTrip) {
    const auto s = parse(kBalance, "from_id,to_id,amount\nB,A,100.01\nA,B,3\n");
    TempDir dir;
    save_system(s, dir / "b.csv", dir / "e.csv");
    EXPECT_EQ(load_system(dir / "b.csv", dir / "e.csv"), s);
}

TEST(Load, ToleratesBlankLinesAndCrLf) {
    const auto s = parse("bank_id,total_assets,total_liabilities,liquid_assets\r\n\r\nA, 10 ,5,1\r\n",
                         "from_id,to_id,amount\r\n");
    EXPECT_EQ(s.sheet(0).total_assets.cents(), 1000);
}

TEST(Load, LiabilitiesAboveAssetsNamesBank) {
    try {
        parse("bank_id,total_assets,total_liabilities,liquid_assets\nGOOD,10,5,0\nBROKEN,10,12,0\n",
              "from_id,to_id,amount\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("BROKEN"), std::string::npos) << e.what();
    }
}

TEST(Load, DuplicateExposureGivesBothLines) {
    try {
        parse(kBalance, "from_id,to_id,amount\nB,A,1\nA,B,2\n\nB,A,3\n");
        FAIL();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("lines 2 and 5"), std::string::npos) << msg;
    }
}

TEST(Load, Diagnostics) {
    EXPECT_THROW(parse("id,a,l,q\n", "from_id,to_id,amount\n"), ParseError);
    EXPECT_THROW(parse(kBalance, "from_id,to_id,amount\nB,A\n"), ParseError);
    EXPECT_THROW(parse(kBalance, "from_id,to_id,amount\nB,A,1.234\n"), ParseError);
    EXPECT_THROW(parse(kBalance, "from_id,to_id,amount\nB,Z,1\n"), ValidationError);
    EXPECT_THROW(parse(kBalance, "from_id,to_id,amount\nB,B,1\n"), ValidationError);
    EXPECT_THROW(parse(kBalance, "from_id,to_id,amount\nB,A,0\n"), ValidationError);
    EXPECT_THROW(parse(kBalance + "A,1,0,0\n", "from_id,to_id,amount\n"), ValidationError);
    try {
        parse(kBalance, "from_id,to_id,amount\nB,A,1\nB,A,x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(std::string(e.what()).rfind("exposures.csv:3:", 0), 0u) << e.what();
    }
    EXPECT_THROW(load_system("/nonexistent/b.csv", "/nonexistent/e.csv"), std::runtime_error);
}

TEST(Save, CanonicalAndStable) {
    // unsorted ids on input
    const auto s = parse("bank_id,total_assets,total_liabilities,liquid_assets\nz,10,5,0\na,10.5,5,1\nm,20,1,0\n",
                         "from_id,to_id,amount\nz,a,1\na,z,2\nm,a,0.5\na,m,1\n");
    TempDir dir;
    save_system(s, dir / "b1.csv", dir / "e1.csv");
    EXPECT_EQ(slurp(dir / "b1.csv"),
              "bank_id,total_assets,total_liabilities,liquid_assets\na,10.50,5.00,1.00\nm,20.00,1.00,0.00\nz,10.00,5.00,0.00\n");
    EXPECT_EQ(slurp(dir / "e1.csv"), "from_id,to_id,amount\na,m,1.00\na,z,2.00\nm,a,0.50\nz,a,1.00\n");
    save_system(load_system(dir / "b1.csv", dir / "e1.csv"), dir / "b2.csv", dir / "e2.csv");
    EXPECT_EQ(slurp(dir / "b1.csv"), slurp(dir / "b2.csv"));
    EXPECT_EQ(slurp(dir / "e1.csv"), slurp(dir / "e2.csv"));
}

TEST(Save, EmptyExposuresHeaderOnly) {
    const auto s = fixture::make({{"a", 100, 50}});
    std::ostringstream b, e;
    write_system(s, b, e);
    EXPECT_EQ(e.str(), "from_id,to_id,amount\n");
}

TEST(Save, RandomSystemsRoundTrip) {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = oracle::random_system(rng, 15, 0.3, 100000, 100000);
        std::stringstream b, e;
        write_system(s, b, e);
        const auto back = read_system(b, e);
        // ids b0..b14 sort lexicographically, so compare through ids
        ASSERT_EQ(back.size(), s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto j = back.index_of(s.sheet(i).bank_id);
            EXPECT_EQ(back.sheet(j), s.sheet(i));
            for (std::size_t k = 0; k < s.size(); ++k)
                EXPECT_EQ(back.exposures().amount(j, back.index_of(s.sheet(k).bank_id)), s.exposures().amount(i, k));
        }
    }
}

TEST(Save, SyntheticSystemKeepsCapitals) {
    CalibrationProfile p;
    p.rng_seed = 12;
    const auto s = generate_system(p);
    TempDir dir;
    save_system(s, dir / "b.csv", dir / "e.csv");
    const auto back = load_system(dir / "b.csv", dir / "e.csv");
    EXPECT_EQ(capitals(back), capitals(s));
    EXPECT_EQ(back, s);
}

TEST(Grid, Parse) {
    const auto g = parse_grid("0:1:0.1");
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(parse_grid("0:1:0.02").size(), 51u);
    EXPECT_EQ(parse_grid("0.3"), std::vector<double>{0.3});
    EXPECT_EQ(parse_grid("0.5:0.5:0.1"), std::vector<double>{0.5});
    for (auto bad : {"", "a", "0:1", "0:1:0", "1:0:0.1", "0:1:0.1:2", "0:1:-1"}) {
        EXPECT_THROW(parse_grid(bad), std::invalid_argument) << bad;
    }
}

TEST(Digest, KnownValue) {
    TempDir dir;
    spit(dir / "abc", "abc");
    EXPECT_EQ(sha256_file(dir / "abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Format, ShortestDouble) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
