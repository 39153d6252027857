#include "contagion/harness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "contagion/parallel.hpp"
#include "contagion/rng.hpp"

namespace contagion {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::counterparty: return "counterparty";
        case Protocol::rollover: return "rollover";
        case Protocol::exogenous: return "asset-shock";
        case Protocol::fire_sale: return "fire-sale";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "counterparty") return Protocol::counterparty;
    if (name == "rollover") return Protocol::rollover;
    if (name == "asset-shock" || name == "exogenous") return Protocol::exogenous;
    if (name == "fire-sale" || name == "fire_sale") return Protocol::fire_sale;
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

std::vector<double> unit_grid(std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {0.0};
    std::vector<double> out(points);
    for (std::size_t k = 0; k < points; ++k) out[k] = static_cast<double>(k) / static_cast<double>(points - 1);
    return out;
}

void SweepConfig::validate() const {
    auto check = [](const std::vector<double>& grid, const char* name) {
        for (double v : grid) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument(std::string(name) + " grid value " + std::to_string(v) +
                                            " outside [0, 1]");
            }
        }
    };
    check(c_grid, "c");
    check(phi_grid, "phi");
    check(f_grid, "f");
}

double EnsembleReport::probability_more_than(std::size_t k) const {
    if (per_seed_results.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t size = k + 1; size < extent_histogram.size(); ++size) hits += extent_histogram[size];
    return static_cast<double>(hits) / static_cast<double>(per_seed_results.size());
}

EnsembleReport summarize(std::size_t bank_count, std::vector<CascadeResult> results) {
    EnsembleReport report;
    report.bank_count = bank_count;
    report.extent_histogram.assign(bank_count + 1, 0);
    std::size_t events = 0;
    std::size_t affected_in_events = 0;
    std::size_t largest = 0;
    for (const auto& r : results) {
        const auto k = r.affected.size();
        ++report.extent_histogram.at(k);
        largest = std::max(largest, k);
        if (k >= 1) {
            ++events;
            affected_in_events += k;
        }
    }
    const double n = static_cast<double>(bank_count);
    if (!results.empty()) {
        report.metrics.contagion_probability = static_cast<double>(events) / static_cast<double>(results.size());
    }
    if (events > 0) {
        report.metrics.conditional_extent = static_cast<double>(affected_in_events) / static_cast<double>(events) / n;
    }
    report.metrics.max_extent = bank_count > 0 ? static_cast<double>(largest) / n : 0.0;
    report.per_seed_results = std::move(results);
    return report;
}

EnsembleReport run_all_seeds(const CascadeEngine& engine, const ProtocolParams& params, unsigned threads) {
    if (params.protocol == Protocol::exogenous) {
        throw std::invalid_argument("the exogenous asset shock has no seed bank; use amplification_curve");
    }
    const auto n = engine.size();
    std::vector<CascadeResult> results(n);
    parallel_for(n, threads, [&](std::size_t seed) {
        switch (params.protocol) {
            case Protocol::counterparty: results[seed] = engine.counterparty(seed); break;
            case Protocol::rollover: results[seed] = engine.rollover(seed, params.f); break;
            case Protocol::fire_sale: results[seed] = engine.fire_sale(seed, params.c, params.with_counterparty); break;
            case Protocol::exogenous: break;
        }
    });
    return summarize(n, std::move(results));
}

EnsembleReport run_all_seeds(const BankingSystem& system, const ProtocolParams& params, unsigned threads) {
    const auto net = net_exposures(system.exposures());
    return run_all_seeds(CascadeEngine(system, net), params, threads);
}

std::vector<AmplificationPoint> amplification_curve(const BankingSystem& system, std::span<const double> c_phi_grid) {
    const auto net = net_exposures(system.exposures());
    const CascadeEngine engine(system, net);
    const double n = static_cast<double>(system.size());
    std::vector<AmplificationPoint> out;
    out.reserve(c_phi_grid.size());
    for (double c_phi : c_phi_grid) {
        // The outcome depends on c and phi only through their product.
        ShockParams shock{c_phi, 1.0, 0.0, false};
        const auto alone = engine.exogenous_shock(shock);
        shock.with_counterparty = true;
        const auto networked = engine.exogenous_shock(shock);
        AmplificationPoint pt;
        pt.c_phi = c_phi;
        pt.frac_no_network = static_cast<double>(alone.affected.size()) / n;
        pt.frac_with_network = static_cast<double>(networked.affected.size()) / n;
        if (!alone.affected.empty()) {
            pt.ratio = static_cast<double>(networked.affected.size()) / static_cast<double>(alone.affected.size());
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<FireSalePoint> fire_sale_sweep(const BankingSystem& system, std::span<const double> c_grid,
                                           std::size_t large_cascade, unsigned threads) {
    const auto net = net_exposures(system.exposures());
    const CascadeEngine engine(system, net);
    const auto n = system.size();
    const auto points = c_grid.size();

    // Flattened (grid point, variant, seed) runs so every run is one task.
    std::vector<CascadeResult> runs(points * 2 * n);
    parallel_for(runs.size(), threads, [&](std::size_t task) {
        const auto seed = task % n;
        const bool with_cp = (task / n) % 2 == 1;
        const double c = c_grid[task / (2 * n)];
        runs[task] = engine.fire_sale(seed, c, with_cp);
    });

    std::vector<FireSalePoint> out;
    out.reserve(points);
    for (std::size_t g = 0; g < points; ++g) {
        auto slice = [&](std::size_t variant) {
            const auto begin = runs.begin() + static_cast<std::ptrdiff_t>((2 * g + variant) * n);
            return summarize(n, std::vector<CascadeResult>(begin, begin + static_cast<std::ptrdiff_t>(n)));
        };
        const auto without = slice(0);
        const auto with = slice(1);
        FireSalePoint pt;
        pt.c = c_grid[g];
        pt.without_counterparty = without.metrics;
        pt.with_counterparty = with.metrics;
        pt.p_large_without = without.probability_more_than(large_cascade);
        pt.p_large_with = with.probability_more_than(large_cascade);
        out.push_back(pt);
    }
    return out;
}

Histogram Histogram::build(std::span<const std::optional<double>> samples, std::size_t bins, double lo, double hi) {
    if (bins == 0 || !(hi > lo)) throw std::invalid_argument("histogram needs bins > 0 and hi > lo");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    for (const auto& s : samples) {
        if (!s) {
            ++h.undefined;
            continue;
        }
        ++h.counts[h.bin_of(*s)];
    }
    return h;
}

std::size_t Histogram::bin_of(double value) const {
    const double t = (value - lo) / (hi - lo) * static_cast<double>(counts.size());
    if (t <= 0.0) return 0;
    return std::min(counts.size() - 1, static_cast<std::size_t>(t));
}

std::size_t Histogram::total() const {
    std::size_t sum = undefined;
    for (auto c : counts) sum += c;
    return sum;
}

Retention retention_for(Protocol protocol) {
    switch (protocol) {
        case Protocol::counterparty:
        case Protocol::fire_sale: return Retention::asset_side;
        case Protocol::rollover: return Retention::liability_side;
        case Protocol::exogenous: break;
    }
    throw std::invalid_argument("null-model comparison needs a seeded protocol");
}

NullModelComparison null_model_comparison(const BankingSystem& system, const ProtocolParams& params,
                                          std::size_t replicas, std::uint64_t rng_seed,
                                          std::optional<std::size_t> swap_budget, std::size_t bins,
                                          unsigned threads) {
    if (replicas == 0) throw std::invalid_argument("null-model comparison needs at least one replica");
    const auto retention = retention_for(params.protocol);

    NullModelComparison out;
    out.real = run_all_seeds(system, params, threads).metrics;
    out.replicas.resize(replicas);
    out.attempts.resize(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        auto replica = generate_replica(system, retention, swap_budget, rng_seed, r);
        out.attempts[r] = replica.attempts;
        out.replicas[r] = run_all_seeds(replica.system, params, 1).metrics;
    });

    std::vector<std::optional<double>> prob, cond, max;
    for (const auto& m : out.replicas) {
        prob.emplace_back(m.contagion_probability);
        cond.push_back(m.conditional_extent);
        max.emplace_back(m.max_extent);
    }
    out.probability = Histogram::build(prob, bins);
    out.conditional_extent = Histogram::build(cond, bins);
    out.max_extent = Histogram::build(max, bins);
    return out;
}

CycleComparison cycle_census_comparison(const BankingSystem& system, std::size_t replicas, std::uint64_t rng_seed,
                                        std::size_t max_len, std::optional<std::size_t> swap_budget,
                                        unsigned threads) {
    CycleComparison out;
    const auto views = AdjacencyViews::from_exposures(system.exposures());
    out.real = directed_cycle_census(views, max_len);
    out.real_triads = triad_motif_census(views);
    out.replicas.resize(replicas);
    out.replica_triads.resize(replicas);
    parallel_for(replicas, threads, [&](std::size_t r) {
        // Topology only: weights and equity adjustment do not matter here.
        RewiringPolicy policy{Retention::asset_side, swap_budget, derive_seed(rng_seed, Stream::replica, {r})};
        const auto replica_views = AdjacencyViews::from_exposures(rewire_exposures(system.exposures(), policy));
        out.replicas[r] = directed_cycle_census(replica_views, max_len);
        out.replica_triads[r] = triad_motif_census(replica_views);
    });
    return out;
}

}  // namespace contagion
