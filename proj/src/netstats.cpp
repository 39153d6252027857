#include "contagion/netstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace contagion {

namespace {

void build_rows(std::size_t n, const std::vector<Edge>& edges, std::vector<std::size_t>& off,
                std::vector<BankIndex>& data) {
    off.assign(n + 1, 0);
    for (const auto& [a, b] : edges) ++off[a + 1];
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    data.resize(edges.size());
    auto cursor = off;
    for (const auto& [a, b] : edges) data[cursor[a]++] = b;
    for (std::size_t i = 0; i < n; ++i) std::sort(data.begin() + off[i], data.begin() + off[i + 1]);
}

std::vector<Edge> sorted_unique(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

}  // namespace

AdjacencyViews::AdjacencyViews(std::size_t n, std::span<const Edge> liability_edges) : n_(n) {
    std::vector<Edge> lia(liability_edges.begin(), liability_edges.end());
    for (const auto& [a, b] : lia) {
        if (a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    }
    lia = sorted_unique(std::move(lia));

    std::vector<Edge> asset;
    std::vector<Edge> und;
    asset.reserve(lia.size());
    und.reserve(2 * lia.size());
    for (const auto& [a, b] : lia) {
        asset.emplace_back(b, a);
        und.emplace_back(a, b);
        und.emplace_back(b, a);
    }
    und = sorted_unique(std::move(und));

    build_rows(n, lia, lia_off_, lia_);
    build_rows(n, asset, asset_off_, asset_);
    build_rows(n, und, und_off_, und_);
}

AdjacencyViews AdjacencyViews::from_exposures(const ExposureMatrix& exposures) {
    std::vector<Edge> edges;
    edges.reserve(exposures.entry_count());
    for (const auto& e : exposures.entries()) edges.emplace_back(e.borrower, e.lender);
    return AdjacencyViews(exposures.size(), edges);
}

bool AdjacencyViews::has_lia_edge(BankIndex from, BankIndex to) const {
    const auto r = lia(from);
    return std::binary_search(r.begin(), r.end(), to);
}

std::vector<Edge> AdjacencyViews::lia_edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (BankIndex i = 0; i < n_; ++i) {
        for (auto j : lia(i)) out.emplace_back(i, j);
    }
    return out;
}

CcdfSeries empirical_ccdf(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    CcdfSeries out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out.push_back({sorted[i], static_cast<double>(sorted.size() - j) / n});
        i = j;
    }
    return out;
}

CcdfSeries integer_ccdf(std::span<const std::size_t> values) {
    if (values.empty()) return {};
    const auto max = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> hist(max + 1, 0);
    for (auto v : values) ++hist[v];
    CcdfSeries out;
    std::size_t above = values.size();
    for (std::size_t k = 0; k <= max; ++k) {
        above -= hist[k];
        out.push_back({static_cast<double>(k), static_cast<double>(above) / static_cast<double>(values.size())});
    }
    return out;
}

DegreeCcdfs degree_ccdfs(const AdjacencyViews& views) {
    std::vector<std::size_t> in, out, und;
    for (BankIndex i = 0; i < views.size(); ++i) {
        in.push_back(views.in_degree(i));
        out.push_back(views.out_degree(i));
        und.push_back(views.degree(i));
    }
    return {integer_ccdf(in), integer_ccdf(out), integer_ccdf(und)};
}

double mean_degree(const AdjacencyViews& views) {
    if (views.size() == 0) return 0.0;
    return 2.0 * static_cast<double>(views.undirected_edge_count()) / static_cast<double>(views.size());
}

std::optional<double> assortativity(const AdjacencyViews& views) {
    // With M links, P = sum k k', S1 = sum (k + k'), S2 = sum (k^2 + k'^2):
    //   r = (4 M P - S1^2) / (2 M S2 - S1^2)
    __int128 m = 0, p = 0, s1 = 0, s2 = 0;
    for (BankIndex i = 0; i < views.size(); ++i) {
        const __int128 ki = views.degree(i);
        for (auto j : views.und(i)) {
            if (j < i) continue;
            const __int128 kj = views.degree(j);
            ++m;
            p += ki * kj;
            s1 += ki + kj;
            s2 += ki * ki + kj * kj;
        }
    }
    if (m == 0) return std::nullopt;
    const __int128 num = 4 * m * p - s1 * s1;
    const __int128 den = 2 * m * s2 - s1 * s1;
    if (den == 0) return std::nullopt;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

Clustering clustering(const AdjacencyViews& views) {
    const auto n = views.size();
    Clustering out;
    out.local.assign(n, 0.0);
    std::vector<std::uint8_t> mark(n, 0);
    for (BankIndex i = 0; i < n; ++i) {
        const auto nb = views.und(i);
        const auto d = nb.size();
        if (d < 2) continue;
        for (auto u : nb) mark[u] = 1;
        std::uint64_t links = 0;
        for (auto u : nb) {
            for (auto v : views.und(u)) {
                if (v > u && mark[v]) ++links;
            }
        }
        for (auto u : nb) mark[u] = 0;
        out.local[i] = static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
    }
    double sum = 0.0;
    for (double c : out.local) sum += c;
    out.average = n > 0 ? sum / static_cast<double>(n) : 0.0;
    return out;
}

CycleCensus directed_cycle_census(const AdjacencyViews& views, std::size_t max_len) {
    if (max_len < 3 || max_len > 5) throw std::invalid_argument("cycle length bound must be 3, 4 or 5");
    const auto n = views.size();
    CycleCensus census;
    census.max_len = max_len;

    // Cycles are rooted at their smallest vertex, so from root r the search
    // only visits vertices above r. dist[v] bounds how many more steps are
    // needed to return to r, which prunes hopeless branches.
    constexpr std::size_t kFar = 99;
    std::vector<std::size_t> dist(n, kFar);
    std::vector<BankIndex> touched;
    std::vector<BankIndex> frontier, next_frontier;
    std::vector<std::uint8_t> on_path(n, 0);

    struct Frame {
        BankIndex node;
        std::size_t next_child;
    };
    std::vector<Frame> stack;

    for (BankIndex root = 0; root < n; ++root) {
        // Reverse BFS from root over vertices > root, depth < max_len.
        frontier.assign(1, root);
        dist[root] = 0;
        touched.assign(1, root);
        for (std::size_t depth = 1; depth < max_len && !frontier.empty(); ++depth) {
            next_frontier.clear();
            for (auto v : frontier) {
                for (auto u : views.asset(v)) {  // u -> v in x_lia
                    if (u <= root || dist[u] != kFar) continue;
                    dist[u] = depth;
                    touched.push_back(u);
                    next_frontier.push_back(u);
                }
            }
            frontier.swap(next_frontier);
        }

        stack.assign(1, Frame{root, 0});
        on_path[root] = 1;
        while (!stack.empty()) {
            auto& top = stack.back();
            const auto out = views.lia(top.node);
            const std::size_t len = stack.size();  // vertices on the path
            if (top.next_child >= out.size()) {
                on_path[top.node] = 0;
                stack.pop_back();
                continue;
            }
            const BankIndex v = out[top.next_child++];
            if (v == root) {
                if (len >= 3) ++census.counts[len - 3];
                continue;
            }
            // Taking v makes len + 1 vertices; closing needs dist[v] more edges.
            if (v < root || on_path[v] || len + dist[v] > max_len) continue;
            on_path[v] = 1;
            stack.push_back(Frame{v, 0});
        }
        on_path[root] = 0;
        for (auto v : touched) dist[v] = kFar;
    }
    return census;
}

TriadCensus triad_motif_census(const AdjacencyViews& views) {
    const auto n = views.size();
    TriadCensus out;
    std::vector<std::uint8_t> mark(n, 0);
    std::uint64_t cycle_walks = 0;
    for (BankIndex i = 0; i < n; ++i) {
        // Transitive: for every edge i->j, count k with i->k and j->k.
        for (auto k : views.lia(i)) mark[k] = 1;
        for (auto j : views.lia(i)) {
            for (auto k : views.lia(j)) {
                if (mark[k]) ++out.source_sink_triads;
            }
        }
        for (auto k : views.lia(i)) mark[k] = 0;

        // Cyclic: for every edge i->j, count k with j->k and k->i.
        for (auto k : views.asset(i)) mark[k] = 1;
        for (auto j : views.lia(i)) {
            for (auto k : views.lia(j)) {
                if (mark[k]) ++cycle_walks;
            }
        }
        for (auto k : views.asset(i)) mark[k] = 0;
    }
    out.cycle_triads = cycle_walks / 3;
    return out;
}

double ccdf_powerlaw_exponent(std::span<const double> values, double lo, double hi) {
    const auto ccdf = empirical_ccdf(values);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& pt : ccdf) {
        if (pt.value < lo || pt.value > hi || pt.probability <= 0.0) continue;
        const double x = std::log(pt.value);
        const double y = std::log(pt.probability);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("not enough CCDF points in the fit window");
    const double md = static_cast<double>(m);
    const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
    return -slope;
}

}  // namespace contagion
