#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vcnet/comparison.hpp"
#include "vcnet/events.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/json_io.hpp"
#include "vcnet/simulation.hpp"
#include "vcnet/version.hpp"

namespace vcnet {

/// FNV-1a over raw bytes; used for the manifest's file inventory.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_string(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw error("failed writing '" + path.string() + "'");
}

inline std::string step_file_name(int step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "step_%02d.edges", step);
    return buf;
}

/// Write a finished run into `dir`: one edge list per step, the synthetic
/// event log, and manifest.json. The manifest echoes the fully resolved
/// config (seed included) so the run can be reproduced from it alone, and
/// inventories every written file with size-independent digests.
/// `inputs` lists the source files the run was launched from as
/// (path, digest) pairs.
inline void write_run(const std::filesystem::path& dir, const SimulationConfig& cfg,
                      const std::vector<SimState>& snapshots,
                      const std::vector<std::pair<std::string, std::string>>& inputs = {}) {
    std::filesystem::create_directories(dir);
    ojson steps = ojson::array();
    for (const SimState& state : snapshots) {
        std::ostringstream edges;
        write_edge_list(state.graph, edges);
        const std::string body = std::move(edges).str();
        const std::string name = step_file_name(state.step);
        write_file(dir / name, body);
        std::size_t event_count = 0;
        for (const auto& e : state.event_log.events)
            if (e.period == state.step) ++event_count;
        steps.push_back(ojson{{"step", state.step},
                              {"file", name},
                              {"nodes", state.graph.node_count()},
                              {"edges", state.graph.edge_count()},
                              {"events", event_count},
                              {"digest", digest_string(body)}});
    }
    std::string events_body;
    if (!snapshots.empty()) {
        std::ostringstream events;
        write_events_csv(snapshots.back().event_log, events);
        events_body = std::move(events).str();
    }
    write_file(dir / "events.csv", events_body);

    ojson input_list = ojson::array();
    for (const auto& [path, digest] : inputs)
        input_list.push_back(ojson{{"path", path}, {"digest", digest}});
    const ojson manifest = {{"tool", tool_name},
                            {"version", tool_version},
                            {"command", "simulate"},
                            {"config", config_to_json(cfg)},
                            {"inputs", input_list},
                            {"steps", steps},
                            {"events_file",
                             {{"file", "events.csv"}, {"digest", digest_string(events_body)}}}};
    write_json_file((dir / "manifest.json").string(), manifest);
}

/// A run read back from disk: the resolved config and one snapshot per
/// step. Each snapshot's investment_freq[v] counts the events up to and
/// including that step in which firm v took part.
struct LoadedRun {
    SimulationConfig config;
    std::vector<NetworkSnapshot> snapshots;
};

inline LoadedRun load_run(const std::filesystem::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    if (!std::filesystem::exists(manifest_path))
        throw error("'" + dir.string() + "' is not a run directory (no manifest.json)");
    const ojson manifest = read_json_file(manifest_path.string());
    if (!manifest.contains("config") || !manifest.contains("steps"))
        throw error("manifest in '" + dir.string() + "' lacks config or steps");
    LoadedRun run;
    run.config = config_from_json(manifest["config"]);

    EventLog log;
    {
        std::ifstream events(dir / "events.csv", std::ios::binary);
        if (!events) throw error("run directory lacks events.csv");
        log = parse_events(events);
    }
    // Synthetic logs name firms by their decimal node id.
    std::vector<std::pair<int, VcId>> participations;  // (period, node)
    for (const auto& event : log.events) {
        for (const VcId vc : event.investors) {
            VcId node = 0;
            try {
                node = static_cast<VcId>(std::stoul(log.names[vc]));
            } catch (const std::exception&) {
                throw error("event log investor '" + log.names[vc] + "' is not a node id");
            }
            participations.emplace_back(event.period, node);
        }
    }

    for (const auto& entry : manifest["steps"]) {
        NetworkSnapshot snap;
        snap.step = entry.at("step").get<int>();
        const auto nodes = entry.at("nodes").get<std::size_t>();
        const auto file = entry.at("file").get<std::string>();
        std::ifstream edges(dir / file, std::ios::binary);
        if (!edges) throw error("run directory lacks step file '" + file + "'");
        snap.graph = read_edge_list(edges, nodes);
        if (snap.graph.node_count() != nodes)
            throw error("step file '" + file + "' contradicts the manifest node count");
        snap.investment_freq.assign(nodes, 0.0);
        for (const auto& [period, node] : participations)
            if (period <= snap.step && node < nodes) snap.investment_freq[node] += 1.0;
        run.snapshots.push_back(std::move(snap));
    }
    if (run.snapshots.empty()) throw error("manifest lists no steps");
    return run;
}

}  // namespace vcnet
