#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "contagion/balance.hpp"

namespace contagion {

class CalibrationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CurrencyRange {
    Money lo;
    Money hi;
};

// Statistical targets for a synthetic banking system. Defaults follow the
// empirical characterization of the Austrian system (first quarter of 2006).
struct CalibrationProfile {
    std::size_t n_banks = 846;

    // Balance sheets: bounded power laws on the CCDF, P(X > x) ~ x^-a.
    double asset_powerlaw_exponent = 0.74;
    double liquid_powerlaw_exponent = 0.67;
    CurrencyRange asset_range{Money::from_euros(60e6), Money::from_euros(35e9)};
    CurrencyRange liquid_range{Money::from_euros(1e6), Money::from_euros(1e9)};

    // Leverage: the main group sits around typical_leverage with log-normal
    // spread and always above low_leverage_cap; the low-leverage group is
    // uniform on [1, low_leverage_cap].
    double typical_leverage = 11.0;
    double leverage_dispersion = 0.6;
    double low_leverage_fraction = 71.0 / 836.0;
    double low_leverage_cap = 4.6;

    // Topology: a core of the largest banks plus spokes attached to it.
    double target_assortativity = -0.62;
    double assortativity_tolerance = 0.1;
    double target_mean_degree = 27.0;
    double hub_fraction = 0.09;
    double core_density = 0.8;
    double spoke_degree_exponent = 1.8;  // Pareto tail of hub links per spoke
    double hub_attraction = 0.5;         // hub choice weight ~ assets^hub_attraction
    double spoke_lending_probability = 0.5;
    double reciprocity = 0.1;
    double borrower_fraction = 1.0;  // largest banks allowed to borrow interbank

    // Weights: share of each lender's total assets placed interbank (not
    // calibrated against data) and log-normal dispersion of link weights.
    double interbank_share = 0.2;
    double weight_dispersion = 1.0;
    // Cap on any single loan as a fraction of the smallest per-link balance
    // sheet room, min over banks of L/out-degree and A/in-degree. Any value
    // <= 1 keeps every weight-retaining rewiring feasible.
    double loan_cap_fraction = 1.0;

    std::size_t max_retries = 50;
    std::uint64_t rng_seed = 0;

    // Throws std::invalid_argument.
    void validate() const;
};

// Bounded power-law variate by inverse CDF on [lo, hi] for CCDF exponent a.
double bounded_powerlaw(double u, double lo, double hi, double exponent);

std::vector<BalanceSheet> sample_balance_sheets(const CalibrationProfile& profile);

// Hub-and-spoke exposure network over the given balance sheets; regenerated
// until the undirected assortativity is within tolerance of the target
// (CalibrationFailure after max_retries).
ExposureMatrix sample_network(const CalibrationProfile& profile, const std::vector<BalanceSheet>& sheets);

BankingSystem generate_system(const CalibrationProfile& profile);

}  // namespace contagion
