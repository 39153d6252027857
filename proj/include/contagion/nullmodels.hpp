#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "contagion/balance.hpp"
#include "contagion/netstats.hpp"

namespace contagion {

// Which endpoint keeps a link's weight when the link is rewired.
enum class Retention {
    asset_side,      // the lender keeps its loan amounts (counterparty studies)
    liability_side,  // the borrower keeps its funding amounts (roll-over studies)
};

struct RewiringPolicy {
    Retention retention = Retention::asset_side;
    // Attempted double-edge swaps; nullopt means 10 x (directed edge count).
    std::optional<std::size_t> swap_budget;
    std::uint64_t rng_seed = 0;
};

class InfeasibleAdjustment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t default_swap_budget(const BankingSystem& system);

struct RewireStats {
    std::size_t attempted = 0;
    std::size_t accepted = 0;
};

// Swap step alone: the rewired matrix with weights kept per `policy.retention`.
ExposureMatrix rewire_exposures(const ExposureMatrix& exposures, const RewiringPolicy& policy,
                                RewireStats* stats = nullptr);

// Degree-preserving rewiring of the raw directed exposure graph. A swap takes
// a->b and c->d to a->d and c->b and is rejected when it would create a
// self-loop or a duplicate link. Balance-sheet totals are then re-derived so
// every bank keeps its original equity; throws InfeasibleAdjustment when that
// leaves a bank with interbank claims larger than the matching balance-sheet
// total.
BankingSystem rewire(const BankingSystem& system, const RewiringPolicy& policy, RewireStats* stats = nullptr);

struct Replica {
    BankingSystem system;
    // Number of rewiring attempts used, 1 when the first draw was feasible.
    std::size_t attempts = 0;
};

// Replica `index` of the null ensemble for `master_seed`. Each attempt uses an
// independent derived stream; after `max_attempts` infeasible draws this
// throws InfeasibleAdjustment.
Replica generate_replica(const BankingSystem& system, Retention retention, std::optional<std::size_t> swap_budget,
                         std::uint64_t master_seed, std::size_t index, std::size_t max_attempts = 100);

// G(n, p) with p = avg_degree / (n - 1). Undirected graphs store each link in
// both orientations; directed graphs give each link one random orientation.
// Throws std::invalid_argument unless n >= 2 and 0 <= avg_degree <= n - 1.
AdjacencyViews erdos_renyi(std::size_t n, double avg_degree, bool directed, std::uint64_t rng_seed);

}  // namespace contagion
