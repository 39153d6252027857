#include "contagion/cascade.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace contagion {

namespace {

void check_fraction(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must be in [0, 1], got " + std::to_string(value));
    }
}

// Tracks banks whose loss moved during the current round.
class TouchedSet {
public:
    explicit TouchedSet(std::size_t n) : mark_(n, 0) {}

    void add(BankIndex i) {
        if (!mark_[i]) {
            mark_[i] = 1;
            list_.push_back(i);
        }
    }
    const std::vector<BankIndex>& list() const { return list_; }
    void clear() {
        for (auto i : list_) mark_[i] = 0;
        list_.clear();
    }

private:
    std::vector<std::uint8_t> mark_;
    std::vector<BankIndex> list_;
};

CascadeResult collect(const CascadeState& state, std::optional<BankIndex> seed) {
    CascadeResult result;
    result.seed = seed;
    result.rounds = state.round;
    result.final_devaluation = state.asset_price_devaluation;
    for (BankIndex i = 0; i < state.status.size(); ++i) {
        if (state.status[i] && (!seed || *seed != i)) result.affected.push_back(i);
    }
    return result;
}

}  // namespace

void ShockParams::validate() const {
    check_fraction(c, "c");
    check_fraction(phi, "phi");
    check_fraction(f, "f");
}

CascadeEngine::CascadeEngine(const BankingSystem& system, const NetExposureMatrix& net)
    : system_(system), net_(net) {
    if (net.size() != system.size()) {
        throw std::invalid_argument("net exposure matrix size does not match the banking system");
    }
    const auto n = system.size();
    capital_.reserve(n);
    assets_.reserve(n);
    liquid_.reserve(n);
    relative_size_.reserve(n);
    const double total = system.total_system_assets().to_double();
    for (const auto& s : system.balance_sheets()) {
        capital_.push_back(s.capital());
        assets_.push_back(s.total_assets.to_double());
        liquid_.push_back(s.liquid_assets.to_double());
        relative_size_.push_back(total > 0.0 ? s.total_assets.to_double() / total : 0.0);
    }
}

void CascadeEngine::check_seed(BankIndex seed) const {
    if (seed >= size()) {
        throw std::out_of_range("seed " + std::to_string(seed) + " out of range for " + std::to_string(size()) +
                                " banks");
    }
}

CascadeResult CascadeEngine::run_loss_cascade(const LossRun& run, const RoundObserver& observer) const {
    const auto n = size();
    CascadeState state;
    state.status.assign(n, 0);
    state.cumulative_loss.assign(n, Money{});
    state.asset_price_devaluation = run.fire_sale ? 0.0 : run.fixed_devaluation;

    std::vector<BankIndex> newly;
    if (run.seed) {
        state.status[*run.seed] = 1;
        newly.push_back(*run.seed);
    }

    const bool has_feedback = run.counterparty || run.fire_sale;
    TouchedSet touched(n);
    std::vector<BankIndex> next;
    double last_haircut = 0.0;

    for (;;) {
        ++state.round;

        for (auto j : newly) {
            if (run.fire_sale) state.asset_price_devaluation += relative_size_[j];
            if (!run.counterparty) continue;
            for (const auto& lender : net_.borrowed_from(j)) {
                if (state.status[lender.peer]) continue;
                state.cumulative_loss[lender.peer] += lender.amount;
                touched.add(lender.peer);
            }
        }
        state.asset_price_devaluation = std::min(state.asset_price_devaluation, 1.0);

        const double haircut = run.c * state.asset_price_devaluation;
        auto fails = [&](BankIndex i) {
            const Money buffer = capital_[i] - state.cumulative_loss[i];
            return buffer.to_double() < assets_[i] * haircut;
        };

        next.clear();
        if (haircut != last_haircut) {
            for (BankIndex i = 0; i < n; ++i) {
                if (!state.status[i] && fails(i)) next.push_back(i);
            }
        } else {
            for (auto i : touched.list()) {
                if (!state.status[i] && fails(i)) next.push_back(i);
            }
        }
        last_haircut = haircut;
        touched.clear();

        for (auto i : next) state.status[i] = 1;
        if (observer) observer(state);
        if (next.empty() || !has_feedback) break;
        std::sort(next.begin(), next.end());
        newly.swap(next);
    }
    return collect(state, run.seed);
}

CascadeResult CascadeEngine::counterparty(BankIndex seed, const RoundObserver& observer) const {
    check_seed(seed);
    return run_loss_cascade(LossRun{seed, 0.0, 0.0, false, true}, observer);
}

CascadeResult CascadeEngine::exogenous_shock(const ShockParams& params, const RoundObserver& observer) const {
    params.validate();
    return run_loss_cascade(LossRun{std::nullopt, params.c, params.phi, false, params.with_counterparty}, observer);
}

CascadeResult CascadeEngine::fire_sale(BankIndex seed, double c, bool with_counterparty,
                                       const RoundObserver& observer) const {
    check_seed(seed);
    check_fraction(c, "c");
    return run_loss_cascade(LossRun{seed, c, 0.0, true, with_counterparty}, observer);
}

CascadeResult CascadeEngine::rollover(BankIndex seed, double f, const RoundObserver& observer) const {
    check_seed(seed);
    check_fraction(f, "f");
    const auto n = size();

    std::vector<double> buffer(n);
    for (BankIndex i = 0; i < n; ++i) buffer[i] = liquid_[i] + f * (assets_[i] - liquid_[i]);

    CascadeState state;
    state.status.assign(n, 0);
    state.cumulative_loss.assign(n, Money{});
    state.status[seed] = 1;

    std::vector<BankIndex> newly{seed};
    std::vector<BankIndex> next;
    TouchedSet touched(n);
    for (;;) {
        ++state.round;
        // Borrowers of a hoarding bank lose that funding line.
        for (auto j : newly) {
            for (const auto& borrower : net_.lent_to(j)) {
                if (state.status[borrower.peer]) continue;
                state.cumulative_loss[borrower.peer] += borrower.amount;
                touched.add(borrower.peer);
            }
        }
        next.clear();
        for (auto i : touched.list()) {
            if (!state.status[i] && state.cumulative_loss[i].to_double() > buffer[i]) next.push_back(i);
        }
        touched.clear();
        for (auto i : next) state.status[i] = 1;
        if (observer) observer(state);
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        newly.swap(next);
    }
    return collect(state, seed);
}

CascadeResult counterparty_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed) {
    return CascadeEngine(system, net).counterparty(seed);
}

CascadeResult rollover_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed, double f) {
    return CascadeEngine(system, net).rollover(seed, f);
}

CascadeResult exogenous_shock(const BankingSystem& system, const NetExposureMatrix& net, const ShockParams& params) {
    return CascadeEngine(system, net).exogenous_shock(params);
}

CascadeResult fire_sale_cascade(const BankingSystem& system, const NetExposureMatrix& net, BankIndex seed, double c,
                                bool with_counterparty) {
    return CascadeEngine(system, net).fire_sale(seed, c, with_counterparty);
}

}  // namespace contagion
