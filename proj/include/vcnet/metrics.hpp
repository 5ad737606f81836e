#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stack>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/graph.hpp"

namespace vcnet {

/// value -> count mapping used for degree and tie-strength distributions.
using Histogram = std::map<std::int64_t, std::int64_t>;

/// Neighbor lists as sorted vectors; cheaper to intersect than the
/// adjacency maps when counting triangles.
inline std::vector<std::vector<VcId>> adjacency_vectors(const SyndicationGraph& g) {
    std::vector<std::vector<VcId>> adj(g.node_count());
    for (VcId v = 0; v < g.node_count(); ++v) {
        adj[v].reserve(g.degree(v));
        for (const auto& [u, w] : g.neighbors(v)) adj[v].push_back(u);
    }
    return adj;
}

/// degree -> number of nodes with that degree. Isolated nodes count at 0.
inline Histogram degree_distribution(const SyndicationGraph& g) {
    Histogram h;
    for (VcId v = 0; v < g.node_count(); ++v) ++h[static_cast<std::int64_t>(g.degree(v))];
    return h;
}

/// Tie-strength distribution: edge weight -> number of edges carrying it.
inline Histogram strength_distribution(const SyndicationGraph& g) {
    Histogram h;
    for (VcId v = 0; v < g.node_count(); ++v)
        for (const auto& [u, w] : g.neighbors(v))
            if (u > v) ++h[w];
    return h;
}

namespace detail {

inline std::size_t sorted_intersection_size(std::span<const VcId> a,
                                            std::span<const VcId> b) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

}  // namespace detail

/// Watts–Strogatz local clustering per node: closed neighbor pairs over
/// all neighbor pairs. Nodes of degree < 2 get 0 by convention.
inline std::vector<double> local_clustering(const SyndicationGraph& g) {
    const auto adj = adjacency_vectors(g);
    std::vector<double> coeff(g.node_count(), 0.0);
    for (VcId v = 0; v < g.node_count(); ++v) {
        const std::size_t d = adj[v].size();
        if (d < 2) continue;
        std::size_t closed = 0;
        for (const VcId u : adj[v]) closed += detail::sorted_intersection_size(adj[v], adj[u]);
        // Each closed pair was seen from both of its endpoints.
        coeff[v] = static_cast<double>(closed) /
                   (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    return coeff;
}

inline double mean(std::span<const double> values) {
    if (values.empty()) throw insufficient_data_error("mean of empty sample");
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

/// Shortest-path betweenness on the unweighted skeleton (Brandes'
/// single-source accumulation), each unordered pair counted once,
/// normalized by (n-1)(n-2)/2. Graphs with fewer than 3 nodes score 0
/// everywhere. Unreachable pairs contribute nothing.
inline std::vector<double> betweenness(const SyndicationGraph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<double> score(n, 0.0);
    if (n < 3) return score;
    const auto adj = adjacency_vectors(g);
    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<VcId>> preds(n);
    std::vector<VcId> order;
    order.reserve(n);
    for (VcId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        std::queue<VcId> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const VcId u = frontier.front();
            frontier.pop();
            order.push_back(u);
            for (const VcId v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    frontier.push(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const VcId w = *it;
            for (const VcId p : preds[w]) delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
            if (w != s) score[w] += delta[w];
        }
    }
    // Every unordered pair was accumulated from both endpoints.
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
    for (double& x : score) x = x / 2.0 / norm;
    return score;
}

/// Core decomposition: a node's shell is the largest k such that it
/// survives repeated removal of all nodes with degree <= k. Isolated
/// nodes are shell 0.
inline std::vector<int> k_shell(const SyndicationGraph& g) {
    const auto n = g.node_count();
    std::vector<int> shell(n, 0);
    std::vector<std::size_t> deg(n);
    std::vector<bool> removed(n, false);
    for (VcId v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::size_t remaining = n;
    int k = 0;
    std::vector<VcId> peel;
    while (remaining > 0) {
        peel.clear();
        for (VcId v = 0; v < n; ++v)
            if (!removed[v] && deg[v] <= static_cast<std::size_t>(k)) peel.push_back(v);
        if (peel.empty()) {
            ++k;
            continue;
        }
        while (!peel.empty()) {
            const VcId v = peel.back();
            peel.pop_back();
            if (removed[v]) continue;
            removed[v] = true;
            shell[v] = k;
            --remaining;
            for (const auto& [u, w] : g.neighbors(v)) {
                if (removed[u]) continue;
                --deg[u];
                if (deg[u] <= static_cast<std::size_t>(k)) peel.push_back(u);
            }
        }
    }
    return shell;
}

/// Top max(1, round(fraction * n)) nodes by (betweenness desc, degree
/// desc, id asc), returned in rank order. Pass precomputed betweenness
/// when it is already available.
inline std::vector<VcId> detect_elites(const SyndicationGraph& g, double fraction,
                                       std::span<const double> betweenness_scores) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw config_error("elite fraction must lie in (0,1]");
    const auto n = g.node_count();
    if (n == 0) return {};
    const auto k = static_cast<std::size_t>(
        std::max(1, static_cast<int>(std::floor(fraction * static_cast<double>(n) + 0.5))));
    std::vector<VcId> ranked(n);
    for (VcId v = 0; v < n; ++v) ranked[v] = v;
    std::sort(ranked.begin(), ranked.end(), [&](VcId a, VcId b) {
        if (betweenness_scores[a] != betweenness_scores[b])
            return betweenness_scores[a] > betweenness_scores[b];
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    ranked.resize(std::min(k, n));
    return ranked;
}

inline std::vector<VcId> detect_elites(const SyndicationGraph& g, double fraction) {
    const auto scores = betweenness(g);
    return detect_elites(g, fraction, scores);
}

/// Elite-anchored partition: each satellite belongs to one elite's group;
/// satellites without an elite neighbor stay unassigned.
struct Partition {
    std::vector<VcId> elites;        // in detection rank order
    std::map<VcId, VcId> group_of;   // satellite -> its elite
};

/// Assign every non-elite with at least one elite neighbor to the elite
/// it shares the heaviest tie with (ties broken by lowest elite id).
inline Partition assign_groups(const SyndicationGraph& g, const std::vector<VcId>& elites) {
    Partition p;
    p.elites = elites;
    std::vector<bool> is_elite(g.node_count(), false);
    for (const VcId e : elites) {
        if (!g.has_node(e)) throw unknown_node_error(e);
        is_elite[e] = true;
    }
    for (VcId v = 0; v < g.node_count(); ++v) {
        if (is_elite[v]) continue;
        int best_weight = 0;
        VcId best_elite = 0;
        for (const auto& [u, w] : g.neighbors(v)) {
            if (!is_elite[u]) continue;
            if (w > best_weight || (w == best_weight && best_weight > 0 && u < best_elite)) {
                best_weight = w;
                best_elite = u;
            }
        }
        if (best_weight > 0) p.group_of.emplace(v, best_elite);
    }
    return p;
}

/// Density of the subgraph induced on `members`: realized member pairs
/// over possible member pairs. Undefined below 2 members.
inline double induced_density(const SyndicationGraph& g, std::span<const VcId> members) {
    if (members.size() < 2)
        throw undefined_value_error("induced density undefined below 2 members");
    std::size_t edges = 0;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            if (g.weight(members[a], members[b]) > 0) ++edges;
    const double pairs =
        0.5 * static_cast<double>(members.size()) * static_cast<double>(members.size() - 1);
    return static_cast<double>(edges) / pairs;
}

/// EI index as a density ratio: within-set density divided by the
/// whole-network density (not the Krackhardt E-I index).
inline double ei_from_densities(double within_density, double whole_density) {
    if (whole_density <= 0.0)
        throw undefined_value_error("EI undefined: whole-network density is zero");
    return within_density / whole_density;
}

inline double ei_index(const SyndicationGraph& g, std::span<const VcId> members) {
    return ei_from_densities(induced_density(g, members), g.density());
}

/// Per-class means for one row block of the indicator table. Fields are
/// absent when the class is empty or the input for them was not supplied.
struct ClassMeans {
    std::optional<double> degree;
    std::optional<double> k_shell;
    std::optional<double> betweenness;
    std::optional<double> investment_frequency;

    bool operator==(const ClassMeans&) const = default;
};

/// All Table-1 style indicators of one network: per-class means plus the
/// elite-clique and center-satellites density/EI figures.
struct IndicatorTable {
    ClassMeans elite;
    ClassMeans follower;
    ClassMeans all;
    std::optional<double> elite_clique_density;
    std::optional<double> elite_clique_ei;
    std::optional<double> group_density_mean;
    std::optional<double> group_ei_mean;

    bool operator==(const IndicatorTable&) const = default;
};

/// Assemble the indicator table. `freq` is the per-node investment
/// frequency (simulated attribute or realized event count); pass an empty
/// span when unknown and the frequency rows stay absent. Undefined cells
/// (no elites, singleton clique, zero whole density, no groups of size
/// >= 2) are absent rather than zero.
inline IndicatorTable indicator_table(const SyndicationGraph& g, const Partition& partition,
                                      std::span<const double> freq) {
    const auto n = g.node_count();
    if (!freq.empty() && freq.size() != n)
        throw error("frequency vector does not match the node count");
    const auto bc = betweenness(g);
    const auto shells = k_shell(g);

    std::vector<bool> is_elite(n, false);
    for (const VcId e : partition.elites) is_elite[e] = true;

    IndicatorTable table;
    auto class_means = [&](auto&& include) {
        ClassMeans m;
        double deg = 0, shell = 0, btw = 0, fr = 0;
        std::size_t count = 0;
        for (VcId v = 0; v < n; ++v) {
            if (!include(v)) continue;
            ++count;
            deg += static_cast<double>(g.degree(v));
            shell += static_cast<double>(shells[v]);
            btw += bc[v];
            if (!freq.empty()) fr += freq[v];
        }
        if (count == 0) return m;
        const auto c = static_cast<double>(count);
        m.degree = deg / c;
        m.k_shell = shell / c;
        m.betweenness = btw / c;
        if (!freq.empty()) m.investment_frequency = fr / c;
        return m;
    };
    table.elite = class_means([&](VcId v) { return bool(is_elite[v]); });
    table.follower = class_means([&](VcId v) { return !is_elite[v]; });
    table.all = class_means([](VcId) { return true; });

    std::optional<double> whole;
    if (n >= 2) whole = g.density();

    if (partition.elites.size() >= 2) {
        table.elite_clique_density = induced_density(g, partition.elites);
        if (whole && *whole > 0.0)
            table.elite_clique_ei = ei_from_densities(*table.elite_clique_density, *whole);
    }

    std::map<VcId, std::vector<VcId>> groups;
    for (const VcId e : partition.elites) groups[e].push_back(e);
    for (const auto& [sat, elite] : partition.group_of) groups[elite].push_back(sat);
    double density_sum = 0.0;
    std::size_t group_count = 0;
    for (const auto& [elite, members] : groups) {
        if (members.size() < 2) continue;
        density_sum += induced_density(g, members);
        ++group_count;
    }
    if (group_count > 0) {
        table.group_density_mean = density_sum / static_cast<double>(group_count);
        if (whole && *whole > 0.0)
            table.group_ei_mean = ei_from_densities(*table.group_density_mean, *whole);
    }
    return table;
}

}  // namespace vcnet
