#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "vcnet/comparison.hpp"
#include "vcnet/errors.hpp"
#include "vcnet/estimation.hpp"
#include "vcnet/events.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/json_io.hpp"
#include "vcnet/metrics.hpp"
#include "vcnet/motifs.hpp"
#include "vcnet/run_io.hpp"
#include "vcnet/simulation.hpp"
#include "vcnet/version.hpp"

namespace vcnet::cli {

// Exit code convention: 0 success, 1 usage or configuration error,
// 2 data error (unreadable/malformed/insufficient input).
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

namespace detail {

inline ojson base_meta(const char* command) {
    return ojson{{"tool", tool_name}, {"version", tool_version}, {"command", command}};
}

/// Map per-event investor names onto graph node ids. Synthetic logs name
/// firms by decimal node id; real logs are accepted when their
/// first-appearance order covers exactly the graph's nodes (which is how
/// project() numbers them).
inline std::vector<double> event_frequencies(const EventLog& log, std::size_t node_count) {
    std::vector<VcId> node_of(log.vc_count());
    bool all_numeric = true;
    for (std::size_t k = 0; k < log.vc_count(); ++k) {
        try {
            std::size_t used = 0;
            const unsigned long id = std::stoul(log.names[k], &used);
            if (used != log.names[k].size() || id >= node_count) {
                all_numeric = false;
                break;
            }
            node_of[k] = static_cast<VcId>(id);
        } catch (const std::exception&) {
            all_numeric = false;
            break;
        }
    }
    if (!all_numeric) {
        if (log.vc_count() != node_count)
            throw error("event investors do not match the graph: " +
                        std::to_string(log.vc_count()) + " firms in events vs " +
                        std::to_string(node_count) + " nodes");
        for (std::size_t k = 0; k < log.vc_count(); ++k) node_of[k] = static_cast<VcId>(k);
    }
    std::vector<double> freq(node_count, 0.0);
    for (const auto& event : log.events)
        for (const VcId vc : event.investors) freq[node_of[vc]] += 1.0;
    return freq;
}

inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw config_error("empty entry in --seeds list");
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(token, &used));
            if (used != token.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw config_error("invalid seed '" + token + "' in --seeds list");
        }
    }
    if (seeds.empty()) throw config_error("--seeds list is empty");
    return seeds;
}

}  // namespace detail

inline int cmd_estimate(const std::string& events_path, const std::string& out_path) {
    std::ifstream in(events_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << events_path << "'\n";
        return exit_data;
    }
    const EventLog log = parse_events(in);
    for (const auto& warning : log.warnings) std::cerr << "warning: " << warning << "\n";
    const ParameterEstimate estimate = estimate_parameters(log);
    const auto distance_curve = syndication_by_distance(log);
    ojson doc = estimate_to_json(estimate, distance_curve);
    doc["meta"] = detail::base_meta("estimate");
    doc["meta"]["events"] = events_path;
    write_json_file(out_path, doc);
    return exit_ok;
}

inline int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                        const std::optional<std::uint64_t>& seed_override,
                        const std::optional<std::string>& seeds_arg, unsigned parallel) {
    const std::string config_bytes = read_file(config_path);
    ojson doc;
    try {
        doc = ojson::parse(config_bytes);
    } catch (const ojson::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    SimulationConfig base = config_from_json(doc);
    if (seed_override) base.seed = *seed_override;
    const std::vector<std::pair<std::string, std::string>> inputs = {
        {config_path, digest_string(config_bytes)}};

    auto simulate_one = [&](const SimulationConfig& cfg, const std::filesystem::path& dir) {
        const auto snapshots = run(cfg);
        write_run(dir, cfg, snapshots, inputs);
    };

    if (!seeds_arg) {
        simulate_one(base, out_dir);
        return exit_ok;
    }

    // Batch mode: one sub-directory per seed, optionally in parallel.
    const auto seeds = detail::parse_seed_list(*seeds_arg);
    if (parallel < 1) throw config_error("--parallel must be >= 1");
    std::atomic<std::size_t> next{0};
    std::mutex failure_lock;
    std::string failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= seeds.size()) return;
            SimulationConfig cfg = base;
            cfg.seed = seeds[k];
            try {
                simulate_one(cfg, std::filesystem::path(out_dir) /
                                      ("seed_" + std::to_string(seeds[k])));
            } catch (const std::exception& e) {
                const std::lock_guard<std::mutex> hold(failure_lock);
                if (failure.empty()) failure = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned threads = std::min<unsigned>(parallel, static_cast<unsigned>(seeds.size()));
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!failure.empty()) throw error(failure);
    return exit_ok;
}

inline int cmd_analyze(const std::string& graph_path, const std::optional<std::string>& events_path,
                       std::size_t min_nodes, double elite_fraction, const std::string& out_path) {
    std::ifstream in(graph_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << graph_path << "'\n";
        return exit_data;
    }
    const SyndicationGraph g = read_edge_list(in, min_nodes);

    std::vector<double> freq;
    if (events_path) {
        std::ifstream events(*events_path, std::ios::binary);
        if (!events) {
            std::cerr << "error: cannot open '" << *events_path << "'\n";
            return exit_data;
        }
        const EventLog log = parse_events(events);
        for (const auto& warning : log.warnings) std::cerr << "warning: " << warning << "\n";
        freq = detail::event_frequencies(log, g.node_count());
    }

    const auto bc = betweenness(g);
    const auto elites = detect_elites(g, elite_fraction, bc);
    const auto partition = assign_groups(g, elites);
    const IndicatorTable table = indicator_table(g, partition, freq);

    ojson doc;
    doc["nodes"] = g.node_count();
    doc["edges"] = g.edge_count();
    doc["density"] =
        g.node_count() >= 2 ? ojson(sig6(g.density())) : ojson(nullptr);
    doc["degree_distribution"] = histogram_to_json(degree_distribution(g));
    doc["strength_distribution"] = histogram_to_json(strength_distribution(g));
    const auto clustering = local_clustering(g);
    doc["mean_clustering"] =
        g.node_count() > 0 ? ojson(sig6(mean(clustering))) : ojson(nullptr);
    doc["motifs"] = motifs_to_json(census(g));
    doc["indicators"] = indicator_table_to_json(table);
    ojson elite_ids = ojson::array();
    for (const VcId e : elites) elite_ids.push_back(e);
    doc["elites"] = elite_ids;
    doc["meta"] = detail::base_meta("analyze");
    doc["meta"]["graph"] = graph_path;
    doc["meta"]["events"] = events_path ? ojson(*events_path) : ojson(nullptr);
    doc["meta"]["elite_fraction"] = sig6(elite_fraction);
    write_json_file(out_path, doc);
    return exit_ok;
}

inline int cmd_compare(const std::string& model_dir, const std::string& reference_path,
                       std::optional<double> elite_fraction, const std::string& out_path) {
    const LoadedRun model = load_run(model_dir);
    const double fraction = elite_fraction.value_or(model.config.elite_fraction);

    ComparisonReport report;
    ojson meta = detail::base_meta("compare");
    meta["model"] = model_dir;
    meta["model_config"] = config_to_json(model.config);
    meta["elite_fraction"] = sig6(fraction);
    if (std::filesystem::is_directory(reference_path)) {
        const LoadedRun reference = load_run(reference_path);
        report = compare_runs(model.snapshots, reference.snapshots, fraction);
        meta["reference"] = reference_path;
        meta["reference_kind"] = "run";
        meta["reference_config"] = config_to_json(reference.config);
    } else {
        std::ifstream in(reference_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open '" << reference_path << "'\n";
            return exit_data;
        }
        NetworkSnapshot reference;
        reference.graph = read_edge_list(in);
        report = compare_runs(model.snapshots, reference, fraction);
        meta["reference"] = reference_path;
        meta["reference_kind"] = "edgelist";
    }
    meta["steps"] = ojson{{"first", model.snapshots.front().step},
                          {"last", model.snapshots.back().step}};
    write_json_file(out_path, report_to_json(report, meta));
    return exit_ok;
}

/// Build the argument parser and run one subcommand.
inline int dispatch(int argc, const char* const* argv) {
    CLI::App app{"Generative models and analytics for co-investment syndication networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);

    auto* estimate = app.add_subcommand(
        "estimate", "Estimate model parameters from an investment-event CSV");
    std::string est_events, est_out;
    estimate->add_option("--events", est_events, "event CSV file")->required();
    estimate->add_option("--out", est_out, "output JSON path")->required();

    auto* simulate = app.add_subcommand("simulate", "Run a model and write a run directory");
    std::string sim_config, sim_out;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::string> sim_seeds;
    unsigned sim_parallel = 1;
    simulate->add_option("--config", sim_config, "config JSON file")->required();
    simulate->add_option("--out", sim_out, "output run directory")->required();
    simulate->add_option("--seed", sim_seed, "override the config's seed");
    simulate->add_option("--seeds", sim_seeds,
                         "comma-separated seed list; writes one run per seed under --out");
    simulate->add_option("--parallel", sim_parallel, "worker threads for --seeds batches");

    auto* analyze = app.add_subcommand("analyze", "Compute metrics and motifs for one network");
    std::string ana_graph, ana_out;
    std::optional<std::string> ana_events;
    std::size_t ana_nodes = 0;
    double ana_fraction = 0.03;
    analyze->add_option("--graph", ana_graph, "edge-list file")->required();
    analyze->add_option("--events", ana_events,
                        "event CSV; enables the investment-frequency indicators");
    analyze->add_option("--nodes", ana_nodes,
                        "minimum node count (for trailing isolated nodes)");
    analyze->add_option("--elite-fraction", ana_fraction, "elite share of nodes (default 0.03)");
    analyze->add_option("--out", ana_out, "output JSON path")->required();

    auto* compare = app.add_subcommand("compare", "Compare a run against a reference network");
    std::string cmp_model, cmp_reference, cmp_out;
    std::optional<double> cmp_fraction;
    compare->add_option("--model", cmp_model, "model run directory")->required();
    compare->add_option("--reference", cmp_reference, "reference edge list or run directory")
        ->required();
    compare->add_option("--elite-fraction", cmp_fraction,
                        "elite share of nodes (default: model config)");
    compare->add_option("--out", cmp_out, "output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (estimate->parsed()) return cmd_estimate(est_events, est_out);
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_out, sim_seed, sim_seeds, sim_parallel);
        if (analyze->parsed())
            return cmd_analyze(ana_graph, ana_events, ana_nodes, ana_fraction, ana_out);
        if (compare->parsed()) return cmd_compare(cmp_model, cmp_reference, cmp_fraction, cmp_out);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;  // unreachable with require_subcommand(1)
}

}  // namespace vcnet::cli
