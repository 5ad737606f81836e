#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/metrics.hpp"

namespace vcnet {

/// Induced-subgraph counts of the eight connected 3- and 4-node classes.
/// Every node subset is counted once, under the class of the subgraph it
/// induces (a triangle inside a K4 is not also a triangle count).
struct MotifCounts {
    std::uint64_t triangle = 0;
    std::uint64_t wedge = 0;  // open path on 3 nodes
    std::uint64_t path4 = 0;
    std::uint64_t star3 = 0;  // claw
    std::uint64_t cycle4 = 0; // chordless quadrangle
    std::uint64_t tadpole = 0;  // triangle plus pendant (paw)
    std::uint64_t diamond = 0;  // 4-cycle plus one chord
    std::uint64_t complete4 = 0;

    bool operator==(const MotifCounts&) const = default;
};

// Exact census without subset enumeration. The strategy: count a few
// cheap *non-induced* pattern totals, then peel the induced classes out
// of them by inclusion–exclusion, densest class first. With
//   t_e   = common neighbors of edge e's endpoints,
//   K4    = complete-4 count, D = diamond count,
// the identities used are (each verified against the subset oracle):
//   triangles            T  = sum_e t_e / 3
//   wedges                  = sum_v C(d_v,2) - 3T
//   K4  = sum_e (edges inside common(e)) / 6
//   D   = sum_e C(t_e,2) - 6 K4
//   4-cycles (all)      NC4 = sum over node pairs of C(#common,2) / 2
//   chordless 4-cycles      = NC4 - D - 3 K4
//   paws = sum over triangles of (d_a+d_b+d_c-6) - 4D - 12 K4
//   claws = sum_v C(d_v,3) - paw - 2D - 4 K4
//   paths-4 = sum_e ((d_u-1)(d_v-1) - t_e) - 4 cycle4 - 2 paw - 6D - 12 K4
inline MotifCounts census(const SyndicationGraph& g) {
    const auto n = g.node_count();
    const auto adj = adjacency_vectors(g);
    std::vector<std::uint64_t> deg(n);
    for (VcId v = 0; v < n; ++v) deg[v] = adj[v].size();

    auto choose2 = [](std::uint64_t d) { return d * (d - 1) / 2; };
    auto choose3 = [](std::uint64_t d) { return d < 3 ? 0 : d * (d - 1) * (d - 2) / 6; };

    struct Edge { VcId u, v; };
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (VcId u = 0; u < n; ++u)
        for (const VcId v : adj[u])
            if (v > u) edges.push_back({u, v});

    std::uint64_t tri_endpoints = 0;   // sum over edges of t_e
    std::uint64_t tri_pairs = 0;       // sum over edges of C(t_e, 2)
    std::uint64_t k4_corners = 0;      // sum over edges of edges inside common(e)
    std::uint64_t tri_degree_sum = 0;  // sum over triangles of (d_a+d_b+d_c-6)
    std::uint64_t paths3 = 0;          // non-induced 3-edge paths
    std::vector<VcId> common;
    for (const auto& [u, v] : edges) {
        common.clear();
        std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(), adj[v].end(),
                              std::back_inserter(common));
        const auto t = static_cast<std::uint64_t>(common.size());
        tri_endpoints += t;
        tri_pairs += choose2(t);
        paths3 += (deg[u] - 1) * (deg[v] - 1) - t;
        for (const VcId w : common) {
            // Count each triangle once, via its lexicographically largest
            // third vertex.
            if (w > v) tri_degree_sum += deg[u] + deg[v] + deg[w] - 6;
            // Edges among the common neighbors: each K4 contributes one
            // such edge per opposite-edge pairing, 6 in total.
            const auto after_w = static_cast<std::size_t>(
                std::upper_bound(common.begin(), common.end(), w) - common.begin());
            k4_corners += static_cast<std::uint64_t>(detail::sorted_intersection_size(
                std::span<const VcId>(common).subspan(after_w), adj[w]));
        }
    }

    // All 4-cycles through each node pair: C(common(u,w), 2) summed over
    // unordered non-adjacent *and* adjacent pairs alike. Scanning each
    // node's two-hop neighborhood keeps memory linear in one neighborhood.
    std::uint64_t cycle_pairs4 = 0;  // 4 * NC4 when summed over ordered pairs
    {
        std::vector<std::uint32_t> commons(n, 0);
        std::vector<VcId> touched;
        for (VcId u = 0; u < n; ++u) {
            touched.clear();
            for (const VcId v : adj[u]) {
                for (const VcId w : adj[v]) {
                    if (w == u) continue;
                    if (commons[w]++ == 0) touched.push_back(w);
                }
            }
            for (const VcId w : touched) {
                cycle_pairs4 += choose2(commons[w]);
                commons[w] = 0;
            }
        }
    }

    MotifCounts counts;
    counts.triangle = tri_endpoints / 3;
    std::uint64_t wedge_base = 0, claw_base = 0;
    for (VcId v = 0; v < n; ++v) {
        wedge_base += choose2(deg[v]);
        claw_base += choose3(deg[v]);
    }
    counts.wedge = wedge_base - 3 * counts.triangle;
    counts.complete4 = k4_corners / 6;
    counts.diamond = tri_pairs - 6 * counts.complete4;
    const std::uint64_t all_cycles4 = cycle_pairs4 / 4;
    counts.cycle4 = all_cycles4 - counts.diamond - 3 * counts.complete4;
    counts.tadpole = tri_degree_sum - 4 * counts.diamond - 12 * counts.complete4;
    counts.star3 = claw_base - counts.tadpole - 2 * counts.diamond - 4 * counts.complete4;
    counts.path4 = paths3 - 4 * counts.cycle4 - 2 * counts.tadpole - 6 * counts.diamond -
                   12 * counts.complete4;
    return counts;
}

/// Ground-truth census by exhaustive subset enumeration: classify every
/// 3- and 4-node subset by edge count and within-subset degree sequence.
/// Exponential by design; only accepts graphs of at most 64 nodes.
inline MotifCounts oracle_census(const SyndicationGraph& g) {
    const auto n = g.node_count();
    if (n > 64) throw graph_too_large_error("oracle census accepts at most 64 nodes");
    MotifCounts counts;
    auto connected = [&](VcId a, VcId b) { return g.weight(a, b) > 0; };
    for (VcId a = 0; a < n; ++a) {
        for (VcId b = a + 1; b < n; ++b) {
            const bool ab = connected(a, b);
            for (VcId c = b + 1; c < n; ++c) {
                const bool ac = connected(a, c), bc = connected(b, c);
                const int e3 = ab + ac + bc;
                if (e3 == 3) ++counts.triangle;
                else if (e3 == 2) ++counts.wedge;
                for (VcId d = c + 1; d < n; ++d) {
                    const bool ad = connected(a, d), bd = connected(b, d), cd = connected(c, d);
                    const int e4 = ab + ac + ad + bc + bd + cd;
                    if (e4 < 3) continue;  // cannot connect 4 nodes
                    if (e4 == 6) { ++counts.complete4; continue; }
                    if (e4 == 5) { ++counts.diamond; continue; }
                    int degs[4] = {ab + ac + ad, ab + bc + bd, ac + bc + cd, ad + bd + cd};
                    std::sort(degs, degs + 4);
                    if (e4 == 4) {
                        if (degs[3] == 2) ++counts.cycle4;
                        else ++counts.tadpole;  // degree sequence (1,2,2,3)
                        continue;
                    }
                    // e4 == 3: connected only when no vertex is isolated.
                    if (degs[0] == 0) continue;  // triangle plus isolated node
                    if (degs[3] == 3) ++counts.star3;
                    else ++counts.path4;  // degree sequence (1,1,2,2)
                }
            }
        }
    }
    return counts;
}

}  // namespace vcnet
