#include "contagion/nullmodels.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "contagion/rng.hpp"

namespace contagion {

namespace {

class BitMatrix {
public:
    explicit BitMatrix(std::size_t n) : n_(n), words_((n * n + 63) / 64, 0) {}

    bool test(std::size_t i, std::size_t j) const {
        const auto k = i * n_ + j;
        return (words_[k >> 6] >> (k & 63)) & 1U;
    }
    void set(std::size_t i, std::size_t j, bool on) {
        const auto k = i * n_ + j;
        const auto bit = std::uint64_t{1} << (k & 63);
        if (on) {
            words_[k >> 6] |= bit;
        } else {
            words_[k >> 6] &= ~bit;
        }
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

}  // namespace

std::size_t default_swap_budget(const BankingSystem& system) { return 10 * system.exposures().entry_count(); }

ExposureMatrix rewire_exposures(const ExposureMatrix& exposures, const RewiringPolicy& policy, RewireStats* stats) {
    const auto n = exposures.size();
    const auto entries = exposures.entries();
    const auto m = entries.size();
    std::vector<BankIndex> borrower(m), lender(m);
    std::vector<Money> weight(m);
    BitMatrix adj(n);
    for (std::size_t e = 0; e < m; ++e) {
        borrower[e] = entries[e].borrower;
        lender[e] = entries[e].lender;
        weight[e] = entries[e].amount;
        adj.set(borrower[e], lender[e], true);
    }

    const std::size_t budget = policy.swap_budget.value_or(10 * m);
    RewireStats local;
    if (m >= 2) {
        Rng rng(policy.rng_seed);
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        for (std::size_t t = 0; t < budget; ++t) {
            ++local.attempted;
            const auto e1 = pick(rng);
            const auto e2 = pick(rng);
            const auto a = borrower[e1], b = lender[e1];
            const auto c = borrower[e2], d = lender[e2];
            // a->b, c->d  becomes  a->d, c->b
            if (a == c || b == d || a == d || c == b) continue;
            if (adj.test(a, d) || adj.test(c, b)) continue;
            adj.set(a, b, false);
            adj.set(c, d, false);
            adj.set(a, d, true);
            adj.set(c, b, true);
            if (policy.retention == Retention::asset_side) {
                // Weights stay in the lenders' slots; the borrowers move.
                borrower[e1] = c;
                borrower[e2] = a;
            } else {
                // Weights stay in the borrowers' slots; the lenders move.
                lender[e1] = d;
                lender[e2] = b;
            }
            ++local.accepted;
        }
    }
    if (stats) *stats = local;

    std::vector<Exposure> rewired(m);
    for (std::size_t e = 0; e < m; ++e) rewired[e] = Exposure{borrower[e], lender[e], weight[e]};
    return ExposureMatrix(n, std::move(rewired));
}

BankingSystem rewire(const BankingSystem& system, const RewiringPolicy& policy, RewireStats* stats) {
    const auto n = system.size();
    ExposureMatrix matrix = rewire_exposures(system.exposures(), policy, stats);

    // The retained side of every balance sheet is untouched. The other side's
    // interbank part changed; holding its non-interbank part fixed would move
    // equity, so that total is re-derived from the original equity instead,
    // which leaves it at its original value. It is feasible only when the
    // implied non-interbank remainder stays non-negative.
    std::vector<BalanceSheet> sheets(system.balance_sheets().begin(), system.balance_sheets().end());
    for (BankIndex i = 0; i < n; ++i) {
        auto& s = sheets[i];
        const Money equity = s.capital();
        if (policy.retention == Retention::asset_side) {
            s.total_liabilities = s.total_assets - equity;
            if (matrix.interbank_liabilities(i) > s.total_liabilities) {
                throw InfeasibleAdjustment("bank '" + s.bank_id + "' would need negative non-interbank liabilities");
            }
        } else {
            s.total_assets = s.total_liabilities + equity;
            if (matrix.interbank_assets(i) > s.total_assets) {
                throw InfeasibleAdjustment("bank '" + s.bank_id + "' would need negative non-interbank assets");
            }
        }
    }
    return BankingSystem(std::move(sheets), std::move(matrix));
}

Replica generate_replica(const BankingSystem& system, Retention retention, std::optional<std::size_t> swap_budget,
                         std::uint64_t master_seed, std::size_t index, std::size_t max_attempts) {
    std::string last_error;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        RewiringPolicy policy{retention, swap_budget, derive_seed(master_seed, Stream::replica_attempt, {index, attempt})};
        try {
            return Replica{rewire(system, policy), attempt + 1};
        } catch (const InfeasibleAdjustment& e) {
            last_error = e.what();
        }
    }
    throw InfeasibleAdjustment("replica " + std::to_string(index) + " infeasible after " +
                               std::to_string(max_attempts) + " attempts: " + last_error);
}

AdjacencyViews erdos_renyi(std::size_t n, double avg_degree, bool directed, std::uint64_t rng_seed) {
    if (n < 2) throw std::invalid_argument("Erdos-Renyi graph needs at least 2 nodes");
    if (!(avg_degree >= 0.0 && avg_degree <= static_cast<double>(n - 1))) {
        throw std::invalid_argument("average degree must be in [0, n - 1]");
    }
    const double p = avg_degree / static_cast<double>(n - 1);
    Rng rng(rng_seed);
    std::vector<Edge> edges;
    auto emit = [&](BankIndex i, BankIndex j) {
        if (!directed) {
            edges.emplace_back(i, j);
            edges.emplace_back(j, i);
        } else if (std::bernoulli_distribution(0.5)(rng)) {
            edges.emplace_back(i, j);
        } else {
            edges.emplace_back(j, i);
        }
    };

    if (p >= 1.0) {
        for (BankIndex i = 0; i < n; ++i) {
            for (BankIndex j = i + 1; j < n; ++j) emit(i, j);
        }
    } else if (p > 0.0) {
        // Walk the upper triangle in row order, skipping geometric gaps.
        std::geometric_distribution<std::size_t> gap(p);
        const std::size_t pairs = n * (n - 1) / 2;
        BankIndex row = 0;
        std::size_t row_start = 0;  // linear index of (row, row + 1)
        for (std::size_t k = gap(rng); k < pairs; k += 1 + gap(rng)) {
            while (k >= row_start + (n - 1 - row)) {
                row_start += n - 1 - row;
                ++row;
            }
            emit(row, row + 1 + (k - row_start));
        }
    }
    return AdjacencyViews(n, edges);
}

}  // namespace contagion
