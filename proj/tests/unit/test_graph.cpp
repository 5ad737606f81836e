#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/rng.hpp"

using namespace vcnet;

TEST_CASE("record_coinvestment creates and increments symmetric weights") {
    SyndicationGraph g;
    g.add_nodes(3);
    CHECK(g.weight(0, 1) == 0);
    g.record_coinvestment(0, 1);
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.weight(1, 0) == 1);
    g.record_coinvestment(1, 0);
    CHECK(g.weight(0, 1) == 2);
    CHECK(g.edge_count() == 1);
    g.record_coinvestment(0, 2, 5);
    CHECK(g.weight(2, 0) == 5);
    CHECK(g.edge_count() == 2);
    CHECK(g.strength(0) == 7);
    CHECK(g.degree(0) == 2);
}

TEST_CASE("self edges and unknown nodes are rejected") {
    SyndicationGraph g;
    g.add_nodes(2);
    CHECK_THROWS_AS(g.record_coinvestment(1, 1), self_edge_error);
    CHECK_THROWS_AS(g.record_coinvestment(0, 7), unknown_node_error);
    CHECK_THROWS_AS(g.weight(5, 0), unknown_node_error);
    CHECK(g.weight(0, 0) == 0);  // diagonal queries answer 0, never stored
}

TEST_CASE("density") {
    SyndicationGraph k4;
    k4.add_nodes(4);
    for (VcId i = 0; i < 4; ++i)
        for (VcId j = i + 1; j < 4; ++j) k4.record_coinvestment(i, j);
    CHECK(k4.density() == 1.0);

    SyndicationGraph empty4;
    empty4.add_nodes(4);
    CHECK(empty4.density() == 0.0);

    SyndicationGraph one;
    one.add_node();
    CHECK_THROWS_AS(one.density(), undefined_value_error);

    // 1,436 nodes and 4,623 edges give the 0.004-range whole density.
    SyndicationGraph sparse;
    sparse.add_nodes(1436);
    SeededRng rng(7);
    std::size_t added = 0;
    while (added < 4623) {
        const auto i = static_cast<VcId>(rng.next_below(1436));
        const auto j = static_cast<VcId>(rng.next_below(1436));
        if (i == j || sparse.weight(i, j) != 0) continue;
        sparse.record_coinvestment(i, j);
        ++added;
    }
    CHECK(sparse.density() == Catch::Approx(0.00449).margin(5e-6));
}

TEST_CASE("second_order matches the definition on a path") {
    SyndicationGraph g;
    g.add_nodes(3);
    g.record_coinvestment(0, 1, 2);
    g.record_coinvestment(1, 2, 3);
    const SecondOrderMatrix m = second_order(g);
    CHECK(m.entry(0, 2) == 6);
    CHECK(m.entry(2, 0) == 6);
    CHECK(m.entry(0, 0) == 4);   // diagonal: squared incident weights
    CHECK(m.entry(1, 1) == 13);  // 2^2 + 3^2
    CHECK(m.max_off_diagonal() == 6);
}

TEST_CASE("second_order on a unit triangle") {
    SyndicationGraph g;
    g.add_nodes(3);
    g.record_coinvestment(0, 1);
    g.record_coinvestment(0, 2);
    g.record_coinvestment(1, 2);
    const SecondOrderMatrix m = second_order(g);
    for (VcId i = 0; i < 3; ++i)
        for (VcId j = 0; j < 3; ++j) CHECK(m.entry(i, j) == (i == j ? 2 : 1));
}

TEST_CASE("second_order equals brute-force triple-loop summation") {
    SeededRng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.next_below(29);
        const auto g = test_util::random_weighted_graph(rng, n, 0.3, 4);
        const SecondOrderMatrix m = second_order(g);
        for (VcId i = 0; i < n; ++i) {
            for (VcId j = 0; j < n; ++j) {
                std::int64_t expected = 0;
                for (VcId k = 0; k < n; ++k)
                    expected += static_cast<std::int64_t>(g.weight(i, k)) * g.weight(k, j);
                REQUIRE(m.entry(i, j) == expected);
            }
        }
    }
}

TEST_CASE("shortest_distance") {
    SyndicationGraph g;
    g.add_nodes(5);
    g.record_coinvestment(0, 1);
    g.record_coinvestment(1, 2);
    // node 3 and 4 disconnected from the rest, tied to each other
    g.record_coinvestment(3, 4);
    CHECK(shortest_distance(g, 0, 0) == 0);
    CHECK(shortest_distance(g, 0, 1) == 1);
    CHECK(shortest_distance(g, 0, 2) == 2);
    CHECK(!shortest_distance(g, 0, 3).has_value());
    CHECK_THROWS_AS(shortest_distance(g, 0, 9), unknown_node_error);
}

TEST_CASE("edge list round trip preserves the graph") {
    SeededRng rng(99);
    const auto g = test_util::random_weighted_graph(rng, 20, 0.2, 5);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    const SyndicationGraph back = read_edge_list(in, g.node_count());
    CHECK(back == g);
}

TEST_CASE("edge list output is sorted by (i, j)") {
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(2, 3);
    g.record_coinvestment(0, 3, 2);
    g.record_coinvestment(0, 1);
    std::ostringstream out;
    write_edge_list(g, out);
    CHECK(out.str() == "0 1 1\n0 3 2\n2 3 1\n");
}

TEST_CASE("edge list reader validates input") {
    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return read_edge_list(in);
    };
    CHECK_THROWS_AS(read("1 1 1\n"), parse_error);   // self edge
    CHECK_THROWS_AS(read("2 1 1\n"), parse_error);   // wrong endpoint order
    CHECK_THROWS_AS(read("0 1 0\n"), parse_error);   // zero weight
    CHECK_THROWS_AS(read("0 1\n"), parse_error);     // missing weight
    CHECK_THROWS_AS(read("0 1 2 3\n"), parse_error); // trailing field
    CHECK_THROWS_AS(read("a b c\n"), parse_error);
    CHECK(read("").node_count() == 0);
    const auto g = read("0 1 3\n\n1 2 1\n");  // blank lines ignored
    CHECK(g.node_count() == 3);
    CHECK(g.weight(0, 1) == 3);
}

TEST_CASE("min_nodes hint preserves trailing isolated nodes") {
    std::istringstream in("0 1 1\n");
    const SyndicationGraph g = read_edge_list(in, 5);
    CHECK(g.node_count() == 5);
    CHECK(g.degree(4) == 0);
}

TEST_CASE("bfs_distances marks unreachable nodes") {
    SyndicationGraph g;
    g.add_nodes(4);
    g.record_coinvestment(0, 1);
    const auto dist = bfs_distances(g, 0);
    CHECK(dist[0] == 0);
    CHECK(dist[1] == 1);
    CHECK(dist[2] == -1);
    CHECK(dist[3] == -1);
}
