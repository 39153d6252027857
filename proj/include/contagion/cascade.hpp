#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "contagion/balance.hpp"

namespace contagion {

// Per-run mutable state. `status[i]` is 1 once bank i has failed (or started
// hoarding, for roll-over runs) and never goes back to 0.
struct CascadeState {
    std::vector<std::uint8_t> status;
    std::size_t round = 0;
    // Fraction of the common asset's value lost so far (fire-sale and
    // exogenous-shock runs).
    double asset_price_devaluation = 0.0;
    // Counterparty losses for loss-driven protocols, lost funding for roll-over.
    std::vector<Money> cumulative_loss;
};

struct CascadeResult {
    std::optional<BankIndex> seed;
    // Sorted, never contains the seed.
    std::vector<BankIndex> affected;
    std::size_t rounds = 0;
    double final_devaluation = 0.0;

    friend bool operator==(const CascadeResult&, const CascadeResult&) = default;
};

struct ShockParams {
    double c = 0.0;    // share of total assets held in the common asset
    double phi = 0.0;  // devaluation of the common asset
    double f = 0.0;    // share of illiquid assets that can be liquidated short term
    bool with_counterparty = true;

    // Throws std::invalid_argument unless every fraction is in [0, 1].
    void validate() const;
};

// Called after every evaluation round with the state at the end of the round.
using RoundObserver = std::function<void(const CascadeState&)>;

// Runs the stress protocols on one system. Holds references to `system` and
// `net`, which must outlive it. Rounds are synchronous: every bank is tested
// against the failed set of the previous round, so results do not depend on
// evaluation order. All trigger conditions are strict; equality survives.
class CascadeEngine {
public:
    CascadeEngine(const BankingSystem& system, const NetExposureMatrix& net);

    const BankingSystem& system() const { return system_; }
    std::size_t size() const { return system_.size(); }

    // Seed q fails; bank i fails when C_i < sum_j L^net_ji sigma_j (zero
    // recovery).
    CascadeResult counterparty(BankIndex seed, const RoundObserver& observer = {}) const;

    // Seed q stops rolling over its interbank loans; bank i starts hoarding
    // when sum_j L^net_ij sigma_j > A^liq_i + f (A^tot_i - A^liq_i).
    CascadeResult rollover(BankIndex seed, double f, const RoundObserver& observer = {}) const;

    // Common asset drops by phi; bank i fails when its capital, net of
    // counterparty losses if enabled, is below A_i c phi.
    CascadeResult exogenous_shock(const ShockParams& params, const RoundObserver& observer = {}) const;

    // Seed q fails and liquidates. Every failure adds A_i / sum_j A_j to the
    // devaluation (capped at 1); bank i fails when C_i < A_i c D (+ counterparty
    // losses when `with_counterparty`).
    CascadeResult fire_sale(BankIndex seed, double c, bool with_counterparty = true,
                            const RoundObserver& observer = {}) const;

private:
    struct LossRun {
        std::optional<BankIndex> seed;
        double c = 0.0;
        double fixed_devaluation = 0.0;
        bool fire_sale = false;
        bool counterparty = true;
    };

    CascadeResult run_loss_cascade(const LossRun& run, const RoundObserver& observer) const;
    void check_seed(BankIndex seed) const;

    const BankingSystem& system_;
    const NetExposureMatrix& net_;
    std::vector<Money> capital_;
    std::vector<double> assets_;
    std::vector<double> liquid_;
    std::vector<double> relative_size_;
};

CascadeResult counterparty_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed);
CascadeResult rollover_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed, double f);
CascadeResult exogenous_shock(const BankingSystem& system, const NetExposureMatrix& net, const ShockParams& params);
CascadeResult fire_sale_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed, double c,
                                bool with_counterparty = true);

}  // namespace contagion
