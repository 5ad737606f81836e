#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vcnet {

/// Base class for every error raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (edge lists, event CSVs, JSON configs).
/// Carries the 1-based line number of the offending record.
struct parse_error : error {
    parse_error(std::size_t line_no, const std::string& what)
        : error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

/// An operation referenced a node id outside the graph.
struct unknown_node_error : error {
    explicit unknown_node_error(std::uint64_t id)
        : error("unknown node id " + std::to_string(id)) {}
};

/// Self-loops are meaningless in a co-investment network.
struct self_edge_error : error {
    explicit self_edge_error(std::uint64_t id)
        : error("self edge on node " + std::to_string(id)) {}
};

/// A quantity (density, EI index, ...) has no defined value on this input.
struct undefined_value_error : error {
    using error::error;
};

/// An estimator was given too little data to produce a value.
struct insufficient_data_error : error {
    using error::error;
};

/// A simulation step index fell outside the configured horizon.
struct step_range_error : error {
    using error::error;
};

/// Invalid simulation or command configuration.
struct config_error : error {
    using error::error;
};

/// The exhaustive subgraph census only accepts small graphs.
struct graph_too_large_error : error {
    using error::error;
};

/// Two data sets being compared do not cover the same steps.
struct alignment_error : error {
    using error::error;
};

}  // namespace vcnet
