#pragma once

#include "vcnet/graph.hpp"
#include "vcnet/rng.hpp"

namespace test_util {

/// Deterministic G(n, p) with unit weights.
inline vcnet::SyndicationGraph random_graph(vcnet::SeededRng& rng, std::size_t n, double p) {
    vcnet::SyndicationGraph g;
    g.add_nodes(n);
    for (vcnet::VcId i = 0; i < n; ++i)
        for (vcnet::VcId j = i + 1; j < n; ++j)
            if (rng.next_unit() < p) g.record_coinvestment(i, j);
    return g;
}

/// Deterministic G(n, p) with random integer weights in [1, max_weight].
inline vcnet::SyndicationGraph random_weighted_graph(vcnet::SeededRng& rng, std::size_t n,
                                                     double p, int max_weight) {
    vcnet::SyndicationGraph g;
    g.add_nodes(n);
    for (vcnet::VcId i = 0; i < n; ++i)
        for (vcnet::VcId j = i + 1; j < n; ++j)
            if (rng.next_unit() < p)
                g.record_coinvestment(
                    i, j, 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_weight))));
    return g;
}

}  // namespace test_util
