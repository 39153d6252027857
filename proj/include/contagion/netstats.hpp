#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "contagion/balance.hpp"

namespace contagion {

using Edge = std::pair<BankIndex, BankIndex>;

// Binary views of the exposure network.
//   x_lia:   i -> j when i borrowed from j (out-neighbours)
//   x_asset: transpose of x_lia, i -> j when i lent to j
//   x_und:   symmetric union, no self-loops
class AdjacencyViews {
public:
    AdjacencyViews() = default;
    // Directed edges in liability orientation (borrower, lender). Duplicates
    // are merged; self-loops and out-of-range endpoints throw
    // std::invalid_argument.
    AdjacencyViews(std::size_t n, std::span<const Edge> liability_edges);

    static AdjacencyViews from_exposures(const ExposureMatrix& exposures);

    std::size_t size() const { return n_; }
    std::size_t edge_count() const { return lia_.size(); }
    std::size_t undirected_edge_count() const { return und_.size() / 2; }

    std::span<const BankIndex> lia(BankIndex i) const { return row(lia_off_, lia_, i); }
    std::span<const BankIndex> asset(BankIndex i) const { return row(asset_off_, asset_, i); }
    std::span<const BankIndex> und(BankIndex i) const { return row(und_off_, und_, i); }

    bool has_lia_edge(BankIndex from, BankIndex to) const;

    std::size_t out_degree(BankIndex i) const { return lia(i).size(); }
    std::size_t in_degree(BankIndex i) const { return asset(i).size(); }
    std::size_t degree(BankIndex i) const { return und(i).size(); }

    std::vector<Edge> lia_edges() const;

private:
    static std::span<const BankIndex> row(const std::vector<std::size_t>& off, const std::vector<BankIndex>& data,
                                          BankIndex i) {
        return std::span<const BankIndex>(data).subspan(off[i], off[i + 1] - off[i]);
    }

    std::size_t n_ = 0;
    std::vector<std::size_t> lia_off_, asset_off_, und_off_;
    std::vector<BankIndex> lia_, asset_, und_;
};

struct CcdfPoint {
    double value;
    double probability;  // P(X > value)
};

using CcdfSeries = std::vector<CcdfPoint>;

// CCDF evaluated at every distinct observed value.
CcdfSeries empirical_ccdf(std::span<const double> values);
// CCDF of a non-negative integer sample evaluated at 0, 1, ..., max.
CcdfSeries integer_ccdf(std::span<const std::size_t> values);

struct DegreeCcdfs {
    CcdfSeries in;
    CcdfSeries out;
    CcdfSeries undirected;
};

DegreeCcdfs degree_ccdfs(const AdjacencyViews& views);
double mean_degree(const AdjacencyViews& views);

// Degree assortativity of the undirected view, averaging over links with both
// endpoint orderings. nullopt when there are no links or every link joins
// nodes with identical degree pairs (zero denominator).
std::optional<double> assortativity(const AdjacencyViews& views);

struct Clustering {
    std::vector<double> local;
    double average = 0.0;
};

// Local clustering on the undirected view; nodes of degree < 2 contribute 0.
Clustering clustering(const AdjacencyViews& views);

// Simple directed cycles in x_lia, each counted once up to rotation.
struct CycleCensus {
    std::size_t max_len = 5;
    std::array<std::uint64_t, 3> counts{};  // lengths 3, 4, 5

    std::uint64_t count(std::size_t len) const { return counts.at(len - 3); }
};

// max_len must be 3, 4 or 5 (std::invalid_argument otherwise).
CycleCensus directed_cycle_census(const AdjacencyViews& views, std::size_t max_len);

struct TriadCensus {
    std::uint64_t cycle_triads = 0;        // i->j->k->i
    std::uint64_t source_sink_triads = 0;  // i->j, j->k, i->k

    friend bool operator==(const TriadCensus&, const TriadCensus&) = default;
};

TriadCensus triad_motif_census(const AdjacencyViews& views);

// Least-squares slope of log P(X > x) against log x over the distinct sample
// points in [lo, hi], negated, so a CCDF ~ x^-a yields a.
double ccdf_powerlaw_exponent(std::span<const double> values, double lo, double hi);

}  // namespace contagion
