#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <vector>

#include "vcnet/metrics.hpp"
#include "test_util.hpp"

using namespace vcnet;
using Catch::Approx;

namespace {

// Independent betweenness oracle: for every pair (s,t) count geodesics
// from both ends and credit interior nodes with sigma_s(v) * sigma_t(v) /
// sigma_s(t). Differs from the production Brandes accumulation.
void bfs_counts(const SyndicationGraph& g, VcId s, std::vector<int>& dist,
                std::vector<double>& sigma) {
    dist.assign(g.node_count(), -1);
    sigma.assign(g.node_count(), 0.0);
    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<VcId> q;
    q.push(s);
    while (!q.empty()) {
        const VcId u = q.front();
        q.pop();
        for (const auto& [v, w] : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
            if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
    }
}

std::vector<double> oracle_betweenness(const SyndicationGraph& g) {
    const auto n = static_cast<VcId>(g.node_count());
    std::vector<double> score(n, 0.0);
    if (n < 3) return score;
    std::vector<int> ds, dt;
    std::vector<double> ss, st;
    for (VcId s = 0; s < n; ++s) {
        bfs_counts(g, s, ds, ss);
        for (VcId t = s + 1; t < n; ++t) {
            if (ds[t] < 0) continue;
            bfs_counts(g, t, dt, st);
            for (VcId v = 0; v < n; ++v) {
                if (v == s || v == t || ds[v] < 0 || dt[v] < 0) continue;
                if (ds[v] + dt[v] == ds[t]) score[v] += ss[v] * st[v] / ss[t];
            }
        }
    }
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
    for (double& x : score) x /= norm;
    return score;
}

// Independent shell oracle: shell(v) is the largest k whose k-core
// (computed from scratch by repeated removal of degree < k nodes)
// still contains v.
std::vector<int> oracle_shells(const SyndicationGraph& g) {
    const auto n = static_cast<VcId>(g.node_count());
    std::vector<int> shell(n, 0);
    for (int k = 1;; ++k) {
        std::vector<bool> in(n, true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (VcId v = 0; v < n; ++v) {
                if (!in[v]) continue;
                int d = 0;
                for (const auto& [u, w] : g.neighbors(v))
                    if (in[u]) ++d;
                if (d < k) {
                    in[v] = false;
                    changed = true;
                }
            }
        }
        bool any = false;
        for (VcId v = 0; v < n; ++v)
            if (in[v]) {
                shell[v] = k;
                any = true;
            }
        if (!any) return shell;
    }
}

SyndicationGraph paw_graph() {
    // Triangle 0-1-2 plus pendant 3 attached to 0.
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(0, 1);
    g.record_coinvestment(1, 2);
    g.record_coinvestment(0, 2);
    g.record_coinvestment(0, 3);
    return g;
}

}  // namespace

TEST_CASE("degree distribution counts isolated nodes at zero") {
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(0, 1);
    g.record_coinvestment(1, 2);
    CHECK(degree_distribution(g) == Histogram{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("strength distribution buckets edges by weight") {
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(0, 1);
    g.record_coinvestment(0, 1);  // repeat syndication -> weight 2
    g.record_coinvestment(1, 2);
    g.record_coinvestment(2, 3, 3);
    CHECK(strength_distribution(g) == Histogram{{1, 1}, {2, 1}, {3, 1}});
    SyndicationGraph empty;
    empty.add_nodes(2);
    CHECK(strength_distribution(empty).empty());
}

TEST_CASE("local clustering on the paw graph") {
    const auto c = local_clustering(paw_graph());
    REQUIRE(c.size() == 4);
    CHECK(c[0] == Approx(1.0 / 3.0));
    CHECK(c[1] == Approx(1.0));
    CHECK(c[2] == Approx(1.0));
    CHECK(c[3] == 0.0);  // degree 1
}

TEST_CASE("clustering ignores weights and zeroes low-degree nodes") {
    SyndicationGraph g;
    g.add_nodes(4);  // path plus isolated node
    g.record_coinvestment(0, 1, 7);
    g.record_coinvestment(1, 2, 2);
    const auto c = local_clustering(g);
    CHECK(c == std::vector<double>{0, 0, 0, 0});
}

TEST_CASE("mean of samples") {
    const std::vector<double> v{1, 2, 3};
    CHECK(mean(v) == Approx(2.0));
    CHECK_THROWS_AS(mean(std::vector<double>{}), insufficient_data_error);
}

TEST_CASE("betweenness on hand-checked graphs") {
    SyndicationGraph path;
    path.add_nodes(3);
    path.record_coinvestment(0, 1);
    path.record_coinvestment(1, 2);
    const auto pb = betweenness(path);
    CHECK(pb[0] == 0.0);
    CHECK(pb[1] == Approx(1.0));
    CHECK(pb[2] == 0.0);

    SyndicationGraph star;
    star.add_nodes(4);
    for (VcId leaf = 1; leaf < 4; ++leaf) star.record_coinvestment(0, leaf);
    const auto sb = betweenness(star);
    CHECK(sb[0] == Approx(1.0));
    for (VcId leaf = 1; leaf < 4; ++leaf) CHECK(sb[leaf] == 0.0);

    // 5-cycle: each node sits on exactly one geodesic (between its two
    // neighbors), so raw 1.0 over C(4,2) = 6 pair slots.
    SyndicationGraph c5;
    c5.add_nodes(5);
    for (VcId v = 0; v < 5; ++v) c5.record_coinvestment(v, (v + 1) % 5);
    for (const double b : betweenness(c5)) CHECK(b == Approx(1.0 / 6.0));
}

TEST_CASE("betweenness of tiny graphs is all zero") {
    SyndicationGraph g;
    g.add_nodes(2);
    g.record_coinvestment(0, 1);
    CHECK(betweenness(g) == std::vector<double>{0.0, 0.0});
    SyndicationGraph empty;
    CHECK(betweenness(empty).empty());
}

TEST_CASE("betweenness matches the pair-counting oracle on random graphs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        SeededRng rng(seed);
        const auto g = test_util::random_graph(rng, 12, 0.25);
        const auto fast = betweenness(g);
        const auto slow = oracle_betweenness(g);
        for (VcId v = 0; v < 12; ++v) CHECK(fast[v] == Approx(slow[v]).margin(1e-12));
    }
    // Sparser, likely disconnected: unreachable pairs must not contribute.
    SeededRng rng(9);
    const auto g = test_util::random_graph(rng, 14, 0.08);
    const auto fast = betweenness(g);
    const auto slow = oracle_betweenness(g);
    for (VcId v = 0; v < 14; ++v) CHECK(fast[v] == Approx(slow[v]).margin(1e-12));
}

TEST_CASE("k-shell on hand-checked graphs") {
    CHECK(k_shell(paw_graph()) == std::vector<int>{2, 2, 2, 1});

    SyndicationGraph k4;
    k4.add_nodes(5);  // K4 plus an isolated node
    for (VcId a = 0; a < 4; ++a)
        for (VcId b = a + 1; b < 4; ++b) k4.record_coinvestment(a, b);
    CHECK(k_shell(k4) == std::vector<int>{3, 3, 3, 3, 0});

    SyndicationGraph path;
    path.add_nodes(3);
    path.record_coinvestment(0, 1);
    path.record_coinvestment(1, 2);
    CHECK(k_shell(path) == std::vector<int>{1, 1, 1});
}

TEST_CASE("k-shell matches the max-core oracle on random graphs") {
    for (std::uint64_t seed : {5ull, 6ull, 7ull}) {
        SeededRng rng(seed);
        const auto g = test_util::random_graph(rng, 50, 0.08);
        CHECK(k_shell(g) == oracle_shells(g));
    }
}

TEST_CASE("elite count is max(1, half-up round of fraction * n)") {
    SyndicationGraph big;
    big.add_nodes(1436);
    std::vector<double> scores(1436);
    for (VcId v = 0; v < 1436; ++v) scores[v] = static_cast<double>(1436 - v);
    const auto elites = detect_elites(big, 0.029, scores);
    REQUIRE(elites.size() == 42);
    for (VcId v = 0; v < 42; ++v) CHECK(elites[v] == v);

    SyndicationGraph ten;
    ten.add_nodes(10);
    CHECK(detect_elites(ten, 0.03).size() == 1);  // round(0.3) = 0, floor of one elite
    SyndicationGraph none;
    CHECK(detect_elites(none, 0.5).empty());
}

TEST_CASE("elite ranking breaks ties by degree then id") {
    SyndicationGraph g;
    g.add_nodes(5);
    // 1 and 2 tie on betweenness 0; 2 has higher degree. 3 and 4 tie on
    // everything; lower id first.
    g.record_coinvestment(2, 0);
    g.record_coinvestment(2, 1);
    g.record_coinvestment(2, 4);
    const std::vector<double> scores{0, 0, 0, 0, 0};
    const auto elites = detect_elites(g, 1.0, scores);
    REQUIRE(elites.size() == 5);
    CHECK(elites[0] == 2);         // degree 3
    CHECK(elites[1] == 0);         // degree 1, lowest id
    CHECK(elites[2] == 1);
    CHECK(elites[3] == 4);         // degree 1
    CHECK(elites[4] == 3);         // degree 0
    CHECK_THROWS_AS(detect_elites(g, 0.0, scores), config_error);
    CHECK_THROWS_AS(detect_elites(g, 1.5, scores), config_error);
}

TEST_CASE("satellites join the elite with the heaviest tie") {
    SyndicationGraph g;
    g.add_nodes(6);
    // Elites 0 and 1. Node 2 ties to both, heavier toward 1; node 3 ties
    // equally, so the lower elite id wins; node 4 touches no elite; node 5
    // is isolated.
    g.record_coinvestment(0, 2, 1);
    g.record_coinvestment(1, 2, 3);
    g.record_coinvestment(0, 3, 2);
    g.record_coinvestment(1, 3, 2);
    g.record_coinvestment(2, 4, 9);
    const auto p = assign_groups(g, {0, 1});
    CHECK(p.elites == std::vector<VcId>{0, 1});
    REQUIRE(p.group_of.size() == 2);
    CHECK(p.group_of.at(2) == 1);
    CHECK(p.group_of.at(3) == 0);
    CHECK_FALSE(p.group_of.count(4));
    CHECK_FALSE(p.group_of.count(5));
    CHECK_THROWS_AS(assign_groups(g, {99}), unknown_node_error);
}

TEST_CASE("induced density and the EI ratio") {
    SyndicationGraph g;
    g.add_nodes(5);
    for (VcId a = 0; a < 4; ++a)
        for (VcId b = a + 1; b < 4; ++b) g.record_coinvestment(a, b);
    const std::vector<VcId> clique{0, 1, 2, 3};
    CHECK(induced_density(g, clique) == 1.0);
    const std::vector<VcId> pair{0, 4};
    CHECK(induced_density(g, pair) == 0.0);
    const std::vector<VcId> one{0};
    CHECK_THROWS_AS(induced_density(g, one), undefined_value_error);

    // Reference-table ratios come out exact in binary arithmetic.
    CHECK(ei_from_densities(0.492, 0.004) == 123.0);
    CHECK(ei_from_densities(0.1, 0.004) == 25.0);
    CHECK_THROWS_AS(ei_from_densities(0.5, 0.0), undefined_value_error);

    // whole density 6/10, clique density 1 -> EI 5/3.
    CHECK(ei_index(g, clique) == Approx(5.0 / 3.0));
}

TEST_CASE("indicator table on an elite star") {
    SyndicationGraph g;
    g.add_nodes(4);
    for (VcId leaf = 1; leaf < 4; ++leaf) g.record_coinvestment(0, leaf);
    const auto partition = assign_groups(g, {0});
    const std::vector<double> freq{5, 1, 1, 1};
    const auto table = indicator_table(g, partition, freq);

    CHECK(table.elite.degree == Approx(3.0));
    CHECK(table.elite.k_shell == Approx(1.0));
    CHECK(table.elite.betweenness == Approx(1.0));
    CHECK(table.elite.investment_frequency == Approx(5.0));
    CHECK(table.follower.degree == Approx(1.0));
    CHECK(table.follower.betweenness == Approx(0.0));
    CHECK(table.follower.investment_frequency == Approx(1.0));
    CHECK(table.all.degree == Approx(1.5));
    CHECK(table.all.investment_frequency == Approx(2.0));

    CHECK_FALSE(table.elite_clique_density);  // a single elite has no clique
    CHECK_FALSE(table.elite_clique_ei);
    // One group holding everyone: density 3/6, EI against whole 3/6.
    CHECK(table.group_density_mean == Approx(0.5));
    CHECK(table.group_ei_mean == Approx(1.0));
}

TEST_CASE("indicator table leaves unknown cells absent") {
    SyndicationGraph g;
    g.add_nodes(3);
    g.record_coinvestment(0, 1);
    const Partition empty_partition;
    const auto table = indicator_table(g, empty_partition, {});
    CHECK_FALSE(table.elite.degree);  // no elites at all
    CHECK(table.follower.degree == Approx(2.0 / 3.0));
    CHECK_FALSE(table.follower.investment_frequency);  // no freq supplied
    CHECK_FALSE(table.elite_clique_density);
    CHECK_FALSE(table.group_density_mean);
    CHECK(table.follower == table.all);

    const std::vector<double> bad_freq{1, 2};
    CHECK_THROWS_AS(indicator_table(g, empty_partition, bad_freq), error);
}

TEST_CASE("two-elite table carries clique density and EI") {
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(0, 1, 4);  // elite-elite tie
    g.record_coinvestment(0, 2);
    g.record_coinvestment(1, 3);
    const auto partition = assign_groups(g, {0, 1});
    const auto table = indicator_table(g, partition, {});
    // clique density 1 (the 0-1 edge); whole density 3/6.
    CHECK(table.elite_clique_density == Approx(1.0));
    CHECK(table.elite_clique_ei == Approx(2.0));
    // groups {0,2} and {1,3}, each density 1.
    CHECK(table.group_density_mean == Approx(1.0));
    CHECK(table.group_ei_mean == Approx(2.0));
}
