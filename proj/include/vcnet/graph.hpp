#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "vcnet/errors.hpp"

namespace vcnet {

using VcId = std::uint32_t;

/// Undirected weighted co-investment network. An edge's weight counts the
/// joint investments between two firms, so a present edge always has
/// weight >= 1. Node ids are dense and assigned in creation order; nodes
/// are never removed.
class SyndicationGraph {
public:
    VcId add_node() {
        adjacency_.emplace_back();
        return static_cast<VcId>(adjacency_.size() - 1);
    }

    void add_nodes(std::size_t count) {
        adjacency_.resize(adjacency_.size() + count);
    }

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_node(VcId v) const { return v < adjacency_.size(); }

    /// Weight of the (i, j) edge; 0 when absent. Querying (i, i) is 0.
    int weight(VcId i, VcId j) const {
        require_node(i);
        require_node(j);
        if (i == j) return 0;
        auto it = adjacency_[i].find(j);
        return it == adjacency_[i].end() ? 0 : it->second;
    }

    /// Neighbors of i with edge weights, in ascending id order.
    const std::map<VcId, int>& neighbors(VcId i) const {
        require_node(i);
        return adjacency_[i];
    }

    std::size_t degree(VcId i) const { return neighbors(i).size(); }

    /// Sum of the weights on edges incident to i.
    std::int64_t strength(VcId i) const {
        std::int64_t total = 0;
        for (const auto& [j, w] : neighbors(i)) total += w;
        return total;
    }

    /// Record joint investments between two distinct firms: creates the
    /// edge or increases an existing weight by `count`.
    void record_coinvestment(VcId i, VcId j, int count = 1) {
        require_node(i);
        require_node(j);
        if (i == j) throw self_edge_error(i);
        if (count < 1) throw error("co-investment count must be >= 1");
        int& forward = adjacency_[i][j];
        if (forward == 0) ++edge_count_;
        forward += count;
        adjacency_[j][i] += count;
    }

    /// Fraction of realized node pairs: E / (n(n-1)/2). Undefined below
    /// two nodes.
    double density() const {
        const std::size_t n = node_count();
        if (n < 2) throw undefined_value_error("density undefined for fewer than 2 nodes");
        const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
        return static_cast<double>(edge_count_) / pairs;
    }

    bool operator==(const SyndicationGraph& other) const {
        return adjacency_ == other.adjacency_;
    }

private:
    void require_node(VcId v) const {
        if (!has_node(v)) throw unknown_node_error(v);
    }

    std::vector<std::map<VcId, int>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Unweighted hop distances from `source` to every node; -1 marks
/// unreachable nodes. One BFS, O(n + m).
inline std::vector<int> bfs_distances(const SyndicationGraph& g, VcId source) {
    if (!g.has_node(source)) throw unknown_node_error(source);
    std::vector<int> dist(g.node_count(), -1);
    std::queue<VcId> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const VcId u = frontier.front();
        frontier.pop();
        for (const auto& [v, w] : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push(v);
            }
        }
    }
    return dist;
}

/// Hop distance between two nodes, or nullopt when disconnected.
inline std::optional<int> shortest_distance(const SyndicationGraph& g, VcId i, VcId j) {
    if (!g.has_node(j)) throw unknown_node_error(j);
    const int d = bfs_distances(g, i)[j];
    if (d < 0) return std::nullopt;
    return d;
}

/// Sparse symmetric square of the weight matrix, M = N^2. Entry (i, j)
/// sums w(i,k) * w(k,j) over all two-step paths, so it measures how much
/// company two firms keep in common. Diagonal entries are stored (they
/// are the sums of squared incident weights) but excluded from
/// max_off_diagonal(), which is the normalizer used by the structural
/// invitation rule.
class SecondOrderMatrix {
public:
    std::size_t size() const { return rows_.size(); }

    std::int64_t entry(VcId i, VcId j) const {
        if (i >= rows_.size()) throw unknown_node_error(i);
        if (j >= rows_.size()) throw unknown_node_error(j);
        auto it = rows_[i].find(j);
        return it == rows_[i].end() ? 0 : it->second;
    }

    /// Nonzero entries of row i (diagonal included), ascending by column.
    const std::map<VcId, std::int64_t>& row(VcId i) const {
        if (i >= rows_.size()) throw unknown_node_error(i);
        return rows_[i];
    }

    /// Largest off-diagonal entry; 0 on a graph with no two-step paths.
    std::int64_t max_off_diagonal() const { return max_off_diagonal_; }

private:
    friend SecondOrderMatrix second_order(const SyndicationGraph& g);

    std::vector<std::map<VcId, std::int64_t>> rows_;
    std::int64_t max_off_diagonal_ = 0;
};

/// Compute M = N^2 by walking two-step paths through every middle node.
/// Runs in O(sum of squared degrees).
inline SecondOrderMatrix second_order(const SyndicationGraph& g) {
    SecondOrderMatrix m;
    m.rows_.resize(g.node_count());
    for (VcId mid = 0; mid < g.node_count(); ++mid) {
        const auto& nbrs = g.neighbors(mid);
        for (const auto& [i, wi] : nbrs) {
            auto& row = m.rows_[i];
            for (const auto& [j, wj] : nbrs) {
                row[j] += static_cast<std::int64_t>(wi) * wj;
            }
        }
    }
    for (VcId i = 0; i < m.rows_.size(); ++i) {
        for (const auto& [j, value] : m.rows_[i]) {
            if (j != i && value > m.max_off_diagonal_) m.max_off_diagonal_ = value;
        }
    }
    return m;
}

/// Serialize as one "i j weight" line per edge with i < j, ordered by
/// (i, j). The node count is implied by the largest id, so writing and
/// re-reading a graph that has trailing isolated nodes needs the
/// min_nodes hint on the read side.
inline void write_edge_list(const SyndicationGraph& g, std::ostream& out) {
    for (VcId i = 0; i < g.node_count(); ++i) {
        for (const auto& [j, w] : g.neighbors(i)) {
            if (j > i) out << i << ' ' << j << ' ' << w << '\n';
        }
    }
}

/// Parse the edge-list format produced by write_edge_list. Blank lines are
/// ignored. The graph gets max(min_nodes, largest id + 1) nodes.
inline SyndicationGraph read_edge_list(std::istream& in, std::size_t min_nodes = 0) {
    struct Entry { VcId i, j; long long w; };
    std::vector<Entry> entries;
    std::size_t max_id = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        long long i = -1, j = -1, w = 0;
        if (!(fields >> i >> j >> w)) throw parse_error(line_no, "expected 'i j weight'");
        std::string rest;
        if (fields >> rest) throw parse_error(line_no, "trailing data after weight");
        if (i < 0 || j < 0) throw parse_error(line_no, "negative node id");
        if (i == j) throw parse_error(line_no, "self edge");
        if (i > j) throw parse_error(line_no, "endpoints must satisfy i < j");
        if (w < 1 || w > std::numeric_limits<int>::max())
            throw parse_error(line_no, "edge weight out of range");
        entries.push_back({static_cast<VcId>(i), static_cast<VcId>(j), w});
        max_id = std::max(max_id, static_cast<std::size_t>(j));
    }
    SyndicationGraph g;
    g.add_nodes(std::max(min_nodes, entries.empty() ? std::size_t{0} : max_id + 1));
    for (const auto& e : entries) {
        if (g.weight(e.i, e.j) != 0) throw error("duplicate edge in edge list");
        g.record_coinvestment(e.i, e.j, static_cast<int>(e.w));
    }
    return g;
}

}  // namespace vcnet
