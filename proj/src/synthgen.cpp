#include "contagion/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "contagion/netstats.hpp"
#include "contagion/rng.hpp"

namespace contagion {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid calibration profile: ") + what);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

std::string bank_id(std::size_t i, std::size_t n) {
    const auto width = std::max<std::size_t>(4, std::to_string(n).size());
    auto digits = std::to_string(i + 1);
    return "B" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

struct DirectedLinks {
    std::vector<Edge> edges;  // (borrower, lender)
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint8_t> can_borrow;

    void add(BankIndex borrower, BankIndex lender) {
        if (!can_borrow[borrower]) return;
        const auto key = static_cast<std::uint64_t>(borrower) * can_borrow.size() + lender;
        if (seen.insert(key).second) edges.emplace_back(borrower, lender);
    }
    // One undirected link; the direction flips when the preferred borrower
    // cannot borrow.
    std::size_t link(BankIndex borrower, BankIndex lender, bool both) {
        if (!can_borrow[borrower]) std::swap(borrower, lender);
        if (!can_borrow[borrower]) return 0;
        add(borrower, lender);
        if (both) add(lender, borrower);
        return 1;
    }
};

// Spoke link counts from a Pareto tail, clamped to [1, cap].
std::size_t spoke_links(double u, double scale, double exponent, std::size_t cap) {
    const double m = std::floor(scale * std::pow(u, -1.0 / exponent));
    return static_cast<std::size_t>(std::clamp(m, 1.0, static_cast<double>(cap)));
}

std::vector<Edge> sample_topology(const CalibrationProfile& p, const std::vector<BalanceSheet>& sheets, Rng& rng) {
    const auto n = sheets.size();
    std::vector<BankIndex> by_size(n);
    std::iota(by_size.begin(), by_size.end(), 0);
    std::stable_sort(by_size.begin(), by_size.end(), [&](BankIndex a, BankIndex b) {
        return sheets[a].total_assets > sheets[b].total_assets;
    });
    const auto hubs = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(p.hub_fraction * static_cast<double>(n))), 2, n);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution reciprocal(p.reciprocity);
    std::bernoulli_distribution spoke_lends(p.spoke_lending_probability);
    std::bernoulli_distribution core_link(p.core_density);

    // Only the larger, leveraged banks borrow interbank; small or
    // low-leverage banks carry too little debt to absorb rewired loans.
    DirectedLinks links;
    links.can_borrow.assign(n, 0);
    const auto borrowers = static_cast<std::size_t>(std::llround(p.borrower_fraction * static_cast<double>(n)));
    for (std::size_t r = 0; r < borrowers; ++r) {
        const auto i = by_size[r];
        links.can_borrow[i] = leverage(sheets[i]) >= p.low_leverage_cap;
    }
    std::size_t undirected = 0;

    for (std::size_t a = 0; a < hubs; ++a) {
        for (std::size_t b = a + 1; b < hubs; ++b) {
            if (!core_link(rng)) continue;
            const auto u = by_size[a], v = by_size[b];
            const bool both = reciprocal(rng);
            undirected += coin(rng) ? links.link(u, v, both) : links.link(v, u, both);
        }
    }

    // Solve for the Pareto scale that hits the target link count.
    const auto spokes = n - hubs;
    std::vector<double> draws(spokes);
    for (auto& d : draws) d = 1.0 - unit(rng);  // (0, 1]
    // Larger spokes get more hub links (spokes are in decreasing size order).
    std::sort(draws.begin(), draws.end());
    const double wanted = p.target_mean_degree * static_cast<double>(n) / 2.0 - static_cast<double>(undirected);
    auto total_links = [&](double scale) {
        double sum = 0.0;
        for (double u : draws) sum += static_cast<double>(spoke_links(u, scale, p.spoke_degree_exponent, hubs));
        return sum;
    };
    double lo = 0.0, hi = static_cast<double>(hubs);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total_links(mid) < wanted ? lo : hi) = mid;
    }
    const double scale = hi;

    std::vector<double> attraction(hubs);
    for (std::size_t h = 0; h < hubs; ++h) {
        attraction[h] = std::pow(sheets[by_size[h]].total_assets.to_double(), p.hub_attraction);
    }
    std::vector<std::pair<double, std::size_t>> keys(hubs);
    for (std::size_t s = 0; s < spokes; ++s) {
        const auto spoke = by_size[hubs + s];
        const auto m = spoke_links(draws[s], scale, p.spoke_degree_exponent, hubs);
        // Weighted sampling without replacement (exponential keys).
        for (std::size_t h = 0; h < hubs; ++h) {
            keys[h] = {-std::log(1.0 - unit(rng)) / attraction[h], h};
        }
        std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(m), keys.end());
        for (std::size_t k = 0; k < m; ++k) {
            const auto hub = by_size[keys[k].second];
            const bool both = reciprocal(rng);
            if (spoke_lends(rng)) {
                links.link(hub, spoke, both);
            } else {
                links.link(spoke, hub, both);
            }
        }
    }
    return std::move(links.edges);
}

// Iterative proportional fitting of link weights to per-bank interbank
// totals, then rounding to cents and clamping to the balance sheets.
std::vector<Exposure> allocate_weights(const CalibrationProfile& p, const std::vector<BalanceSheet>& sheets,
                                       const std::vector<Edge>& edges, Rng& rng) {
    const auto n = sheets.size();
    const auto m = edges.size();
    std::lognormal_distribution<double> noise(0.0, p.weight_dispersion);
    std::vector<double> w(m);
    for (auto& x : w) x = noise(rng);

    std::vector<std::uint8_t> lends(n, 0), borrows(n, 0);
    for (const auto& [b, l] : edges) {
        borrows[b] = 1;
        lends[l] = 1;
    }
    std::vector<double> asset_target(n, 0.0), liability_target(n, 0.0);
    double asset_total = 0.0, liability_base = 0.0;
    for (BankIndex i = 0; i < n; ++i) {
        if (lends[i]) {
            asset_target[i] = p.interbank_share * sheets[i].total_assets.to_double();
            asset_total += asset_target[i];
        }
        if (borrows[i]) liability_base += sheets[i].total_liabilities.to_double();
    }
    const double kappa = liability_base > 0.0 ? asset_total / liability_base : 0.0;
    for (BankIndex i = 0; i < n; ++i) {
        if (borrows[i]) liability_target[i] = kappa * sheets[i].total_liabilities.to_double();
    }

    std::vector<double> sum(n);
    for (int it = 0; it < 200; ++it) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t e = 0; e < m; ++e) sum[edges[e].first] += w[e];
        for (std::size_t e = 0; e < m; ++e) {
            const auto b = edges[e].first;
            w[e] = sum[b] > 0.0 ? w[e] * liability_target[b] / sum[b] : 0.0;
        }
        std::fill(sum.begin(), sum.end(), 0.0);
        for (std::size_t e = 0; e < m; ++e) sum[edges[e].second] += w[e];
        for (std::size_t e = 0; e < m; ++e) {
            const auto l = edges[e].second;
            w[e] = sum[l] > 0.0 ? w[e] * asset_target[l] / sum[l] : 0.0;
        }
    }

    std::vector<std::int64_t> cents(m);
    // Rewiring can hand any loan to any slot. Keeping every loan below
    // L_b / out_degree(b) for all borrowers and A_l / in_degree(l) for all
    // lenders means any reshuffle still fits every balance sheet.
    std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
    for (const auto& [b, l] : edges) ++out_deg[b], ++in_deg[l];
    double smallest = std::numeric_limits<double>::infinity();
    for (BankIndex i = 0; i < n; ++i) {
        if (out_deg[i]) smallest = std::min(smallest, sheets[i].total_liabilities.to_double() / out_deg[i]);
        if (in_deg[i]) smallest = std::min(smallest, sheets[i].total_assets.to_double() / in_deg[i]);
    }
    const double cap = std::max(1.0, std::floor(p.loan_cap_fraction * smallest));
    for (std::size_t e = 0; e < m; ++e) cents[e] = std::max<std::int64_t>(1, std::llround(std::min(w[e], cap)));

    // Clamp per-bank totals to the balance sheet: rows first, then columns.
    auto clamp_side = [&](bool rows) {
        std::vector<std::int64_t> total(n, 0);
        for (std::size_t e = 0; e < m; ++e) total[rows ? edges[e].first : edges[e].second] += cents[e];
        for (std::size_t e = 0; e < m; ++e) {
            const auto owner = rows ? edges[e].first : edges[e].second;
            const auto cap = rows ? sheets[owner].total_liabilities.cents() : sheets[owner].total_assets.cents();
            if (total[owner] > cap) {
                cents[e] = static_cast<std::int64_t>(static_cast<long double>(cents[e]) * cap / total[owner]);
            }
        }
    };
    clamp_side(true);
    clamp_side(false);

    std::vector<Exposure> out;
    out.reserve(m);
    for (std::size_t e = 0; e < m; ++e) {
        if (cents[e] > 0) out.push_back(Exposure{edges[e].first, edges[e].second, Money(cents[e])});
    }
    return out;
}

}  // namespace

void CalibrationProfile::validate() const {
    require(n_banks >= 2, "need at least 2 banks");
    require(asset_powerlaw_exponent > 0.0 && liquid_powerlaw_exponent > 0.0, "exponents must be positive");
    require(asset_range.lo > Money{} && asset_range.lo < asset_range.hi, "asset range must be positive and ordered");
    require(liquid_range.lo > Money{} && liquid_range.lo < liquid_range.hi,
            "liquid range must be positive and ordered");
    require(typical_leverage > low_leverage_cap, "typical leverage must exceed the low-leverage cap");
    require(low_leverage_cap > 1.0, "low-leverage cap must exceed 1");
    require(leverage_dispersion >= 0.0 && weight_dispersion >= 0.0, "dispersions must be non-negative");
    require(in_unit(low_leverage_fraction) && in_unit(hub_fraction) && in_unit(core_density) &&
                in_unit(spoke_lending_probability) && in_unit(reciprocity) && in_unit(interbank_share) &&
                in_unit(loan_cap_fraction) && in_unit(borrower_fraction),
            "fractions must be in [0, 1]");
    require(assortativity_tolerance >= 0.0, "tolerance must be non-negative");
    require(target_mean_degree > 0.0 && target_mean_degree <= static_cast<double>(n_banks - 1),
            "mean degree must be in (0, n - 1]");
    require(spoke_degree_exponent > 0.0, "spoke degree exponent must be positive");
    require(max_retries >= 1, "need at least one network attempt");
}

double bounded_powerlaw(double u, double lo, double hi, double exponent) {
    const double a = std::pow(lo, -exponent);
    const double b = std::pow(hi, -exponent);
    return std::pow(a - u * (a - b), -1.0 / exponent);
}

std::vector<BalanceSheet> sample_balance_sheets(const CalibrationProfile& profile) {
    profile.validate();
    const auto n = profile.n_banks;
    Rng rng = make_rng(profile.rng_seed, Stream::balance_sheets);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<std::uint8_t> low(n, 0);
    const auto low_count = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::llround(profile.low_leverage_fraction * static_cast<double>(n))));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < low_count; ++k) low[order[k]] = 1;

    std::vector<BalanceSheet> sheets(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = sheets[i];
        s.bank_id = bank_id(i, n);
        const double assets = bounded_powerlaw(unit(rng), profile.asset_range.lo.to_double(),
                                               profile.asset_range.hi.to_double(), profile.asset_powerlaw_exponent);
        s.total_assets = Money(std::llround(assets));

        double lambda;
        if (low[i]) {
            lambda = 1.0 + unit(rng) * (profile.low_leverage_cap - 1.0);
        } else {
            do {
                lambda = profile.typical_leverage * std::exp(profile.leverage_dispersion * normal(rng));
            } while (lambda <= profile.low_leverage_cap);
        }
        const auto equity = std::max<std::int64_t>(1, std::llround(s.total_assets.to_double() / lambda));
        s.total_liabilities = s.total_assets - Money(equity);

        const double liquid = bounded_powerlaw(unit(rng), profile.liquid_range.lo.to_double(),
                                               profile.liquid_range.hi.to_double(), profile.liquid_powerlaw_exponent);
        s.liquid_assets = min(Money(std::llround(liquid)), s.total_assets);
    }
    return sheets;
}

ExposureMatrix sample_network(const CalibrationProfile& profile, const std::vector<BalanceSheet>& sheets) {
    profile.validate();
    const auto n = sheets.size();
    double last_r = std::nan("");
    for (std::size_t attempt = 0; attempt < profile.max_retries; ++attempt) {
        Rng rng = make_rng(profile.rng_seed, Stream::network, {attempt});
        const auto edges = sample_topology(profile, sheets, rng);
        const auto r = assortativity(AdjacencyViews(n, edges));
        if (!r) continue;
        last_r = *r;
        if (std::abs(*r - profile.target_assortativity) > profile.assortativity_tolerance) continue;
        return ExposureMatrix(n, allocate_weights(profile, sheets, edges, rng));
    }
    throw CalibrationFailure("no network within assortativity tolerance after " +
                             std::to_string(profile.max_retries) + " attempts (last r = " + std::to_string(last_r) +
                             ")");
}

BankingSystem generate_system(const CalibrationProfile& profile) {
    auto sheets = sample_balance_sheets(profile);
    auto exposures = sample_network(profile, sheets);
    return BankingSystem(std::move(sheets), std::move(exposures));
}

}  // namespace contagion
