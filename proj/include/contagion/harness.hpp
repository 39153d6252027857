#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "contagion/cascade.hpp"
#include "contagion/netstats.hpp"
#include "contagion/nullmodels.hpp"

namespace contagion {

enum class Protocol { counterparty, rollover, exogenous, fire_sale };

std::string_view to_string(Protocol p);
// Accepts "counterparty", "rollover", "asset-shock"/"exogenous", "fire-sale".
Protocol parse_protocol(std::string_view name);

struct ProtocolParams {
    Protocol protocol = Protocol::counterparty;
    double f = 0.0;  // roll-over
    double c = 0.0;  // fire-sale
    bool with_counterparty = true;  // fire-sale
};

// Evenly spaced points on [0, 1].
std::vector<double> unit_grid(std::size_t points = 51);

struct SweepConfig {
    Protocol protocol = Protocol::counterparty;
    std::vector<double> c_grid = unit_grid();
    std::vector<double> phi_grid = {1.0};
    std::vector<double> f_grid = {0.0};
    std::size_t replicas = 0;
    std::uint64_t rng_seed = 0;

    // Throws std::invalid_argument when a grid value leaves [0, 1].
    void validate() const;
};

// Metric triple over one set of cascade runs. Extents are fractions of the
// bank count and exclude the seed.
struct ContagionMetrics {
    double contagion_probability = 0.0;
    std::optional<double> conditional_extent;
    double max_extent = 0.0;

    friend bool operator==(const ContagionMetrics&, const ContagionMetrics&) = default;
};

struct EnsembleReport {
    std::size_t bank_count = 0;
    ContagionMetrics metrics;
    std::vector<CascadeResult> per_seed_results;
    // extent_histogram[k] = number of seeds with exactly k affected banks.
    std::vector<std::size_t> extent_histogram;

    // Fraction of seeds that affected more than `k` banks.
    double probability_more_than(std::size_t k) const;
};

// Pure fold over stored results.
EnsembleReport summarize(std::size_t bank_count, std::vector<CascadeResult> results);

// One cascade per bank as seed. Exogenous shocks have no seed and are
// rejected with std::invalid_argument.
EnsembleReport run_all_seeds(const CascadeEngine& engine, const ProtocolParams& params, unsigned threads = 1);
EnsembleReport run_all_seeds(const BankingSystem& system, const ProtocolParams& params, unsigned threads = 1);

struct AmplificationPoint {
    double c_phi = 0.0;
    double frac_no_network = 0.0;
    double frac_with_network = 0.0;
    std::optional<double> ratio;  // with / without, nullopt when without == 0
};

std::vector<AmplificationPoint> amplification_curve(const BankingSystem& system, std::span<const double> c_phi_grid);

struct FireSalePoint {
    double c = 0.0;
    ContagionMetrics without_counterparty;
    ContagionMetrics with_counterparty;
    double p_large_without = 0.0;  // P(|affected| > large_cascade)
    double p_large_with = 0.0;
};

std::vector<FireSalePoint> fire_sale_sweep(const BankingSystem& system, std::span<const double> c_grid,
                                           std::size_t large_cascade = 10, unsigned threads = 1);

// Fixed-width histogram on [lo, hi]; values equal to hi go to the last bin.
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::size_t> counts;
    std::size_t undefined = 0;  // nullopt samples

    static Histogram build(std::span<const std::optional<double>> samples, std::size_t bins, double lo = 0.0,
                           double hi = 1.0);
    std::size_t bin_of(double value) const;
    std::size_t total() const;
};

Retention retention_for(Protocol protocol);

struct NullModelComparison {
    ContagionMetrics real;
    std::vector<ContagionMetrics> replicas;
    std::vector<std::size_t> attempts;  // rewiring attempts per replica
    Histogram probability;
    Histogram conditional_extent;
    Histogram max_extent;
};

NullModelComparison null_model_comparison(const BankingSystem& system, const ProtocolParams& params,
                                          std::size_t replicas, std::uint64_t rng_seed,
                                          std::optional<std::size_t> swap_budget = std::nullopt,
                                          std::size_t bins = 20, unsigned threads = 1);

struct CycleComparison {
    CycleCensus real;
    TriadCensus real_triads;
    std::vector<CycleCensus> replicas;
    std::vector<TriadCensus> replica_triads;
};

CycleComparison cycle_census_comparison(const BankingSystem& system, std::size_t replicas, std::uint64_t rng_seed,
                                        std::size_t max_len = 5,
                                        std::optional<std::size_t> swap_budget = std::nullopt,
                                        unsigned threads = 1);

}  // namespace contagion
