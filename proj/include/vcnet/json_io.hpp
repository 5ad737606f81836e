#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "vcnet/comparison.hpp"
#include "vcnet/errors.hpp"
#include "vcnet/estimation.hpp"
#include "vcnet/metrics.hpp"
#include "vcnet/motifs.hpp"
#include "vcnet/simulation.hpp"

namespace vcnet {

/// Insertion-ordered JSON so every document has a fixed key order.
using ojson = nlohmann::ordered_json;

/// Round to 6 significant digits by formatting and parsing back, so all
/// emitted floats have one stable representation across runs.
inline double sig6(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return std::strtod(buf, nullptr);
}

inline ojson json_number(double x) { return sig6(x); }

inline ojson json_number(const std::optional<double>& x) {
    if (!x) return nullptr;
    return sig6(*x);
}

inline ojson histogram_to_json(const Histogram& h) {
    ojson out = ojson::object();
    for (const auto& [value, count] : h) out[std::to_string(value)] = count;
    return out;
}

inline ojson motifs_to_json(const MotifCounts& m) {
    return ojson{{"triangle", m.triangle}, {"wedge", m.wedge},       {"path4", m.path4},
                 {"star3", m.star3},       {"cycle4", m.cycle4},     {"tadpole", m.tadpole},
                 {"diamond", m.diamond},   {"complete4", m.complete4}};
}

inline ojson class_means_to_json(const ClassMeans& c) {
    return ojson{{"degree", json_number(c.degree)},
                 {"k_shell", json_number(c.k_shell)},
                 {"betweenness", json_number(c.betweenness)},
                 {"investment_frequency", json_number(c.investment_frequency)}};
}

inline ojson indicator_table_to_json(const IndicatorTable& t) {
    return ojson{{"elite", class_means_to_json(t.elite)},
                 {"follower", class_means_to_json(t.follower)},
                 {"all", class_means_to_json(t.all)},
                 {"elite_clique_density", json_number(t.elite_clique_density)},
                 {"elite_clique_ei", json_number(t.elite_clique_ei)},
                 {"group_density_mean", json_number(t.group_density_mean)},
                 {"group_ei_mean", json_number(t.group_ei_mean)}};
}

inline ojson estimate_to_json(const ParameterEstimate& e,
                              const std::map<DistanceClass, double>& distance_curve) {
    ojson inv = ojson::object();
    for (const auto& [count, p] : e.invitation_curve) inv[std::to_string(count)] = sig6(p);
    ojson dist = ojson::object();
    for (const auto& [cls, p] : distance_curve) dist[cls.label()] = sig6(p);
    return ojson{{"freq_tertiles",
                  {sig6(e.freq_tertiles[0]), sig6(e.freq_tertiles[1]), sig6(e.freq_tertiles[2])}},
                 {"tendency_tertiles",
                  {sig6(e.tendency_tertiles[0]), sig6(e.tendency_tertiles[1]),
                   sig6(e.tendency_tertiles[2])}},
                 {"invitation_curve", inv},
                 {"syndication_by_distance", dist}};
}

inline ojson config_to_json(const SimulationConfig& cfg) {
    return ojson{{"m1", cfg.m1},
                 {"growth_rate", sig6(cfg.growth_rate)},
                 {"target_multiplier", sig6(cfg.target_multiplier)},
                 {"horizon", cfg.horizon},
                 {"freq_tertiles",
                  {sig6(cfg.freq_tertiles[0]), sig6(cfg.freq_tertiles[1]),
                   sig6(cfg.freq_tertiles[2])}},
                 {"tendency_tertiles",
                  {sig6(cfg.tendency_tertiles[0]), sig6(cfg.tendency_tertiles[1]),
                   sig6(cfg.tendency_tertiles[2])}},
                 {"variant", to_string(cfg.variant)},
                 {"elite_fraction", sig6(cfg.elite_fraction)},
                 {"seed", cfg.seed}};
}

/// Parse a config document. Absent fields keep their defaults; unknown
/// keys and type mismatches are config errors naming the field.
inline SimulationConfig config_from_json(const ojson& doc) {
    if (!doc.is_object()) throw config_error("config must be a JSON object");
    SimulationConfig cfg;
    const std::set<std::string> known = {"m1",           "growth_rate",      "target_multiplier",
                                         "horizon",      "freq_tertiles",    "tendency_tertiles",
                                         "variant",      "elite_fraction",   "seed"};
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key)) throw config_error("unknown config field '" + key + "'");
    auto tertiles = [](const ojson& v, const char* field) {
        if (!v.is_array() || v.size() != 3)
            throw config_error(std::string(field) + " must be an array of 3 numbers");
        std::array<double, 3> out{};
        for (int k = 0; k < 3; ++k) {
            if (!v[k].is_number())
                throw config_error(std::string(field) + " must contain numbers");
            out[k] = v[k].get<double>();
        }
        return out;
    };
    try {
        if (doc.contains("m1")) cfg.m1 = doc["m1"].get<int>();
        if (doc.contains("growth_rate")) cfg.growth_rate = doc["growth_rate"].get<double>();
        if (doc.contains("target_multiplier"))
            cfg.target_multiplier = doc["target_multiplier"].get<double>();
        if (doc.contains("horizon")) cfg.horizon = doc["horizon"].get<int>();
        if (doc.contains("freq_tertiles"))
            cfg.freq_tertiles = tertiles(doc["freq_tertiles"], "freq_tertiles");
        if (doc.contains("tendency_tertiles"))
            cfg.tendency_tertiles = tertiles(doc["tendency_tertiles"], "tendency_tertiles");
        if (doc.contains("variant")) {
            if (!doc["variant"].is_string()) throw config_error("variant must be a string");
            cfg.variant = variant_from_string(doc["variant"].get<std::string>());
        }
        if (doc.contains("elite_fraction"))
            cfg.elite_fraction = doc["elite_fraction"].get<double>();
        if (doc.contains("seed")) {
            const ojson& s = doc["seed"];
            if (s.is_number_unsigned()) {
                cfg.seed = s.get<std::uint64_t>();
            } else if (s.is_number_integer()) {
                const auto v = s.get<std::int64_t>();
                if (v < 0) throw config_error("seed must be non-negative");
                cfg.seed = static_cast<std::uint64_t>(v);
            } else {
                throw config_error("seed must be an integer");
            }
        }
    } catch (const ojson::exception& e) {
        throw config_error(std::string("malformed config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

inline ojson step_comparison_to_json(const StepComparison& s) {
    return ojson{{"step", s.step},
                 {"degree", json_number(s.degree_ks)},
                 {"strength", json_number(s.strength_ks)},
                 {"clustering", json_number(s.clustering_ks)}};
}

/// Report schema: top-level keys ks, motifs, correlation_series, meta.
/// The caller supplies meta (paths, configs, tool info).
inline ojson report_to_json(const ComparisonReport& r, const ojson& meta) {
    ojson ks = ojson::array();
    for (const auto& s : r.steps) ks.push_back(step_comparison_to_json(s));
    ojson corr = ojson::array();
    for (const auto& s : r.steps)
        corr.push_back(ojson{{"step", s.step}, {"correlation", json_number(s.correlation)}});
    return ojson{{"ks", ks},
                 {"motifs",
                  {{"step", r.final_step},
                   {"model", motifs_to_json(r.model_motifs)},
                   {"reference", motifs_to_json(r.reference_motifs)}}},
                 {"correlation_series", corr},
                 {"meta", meta}};
}

/// Write a document with 2-space indentation and a trailing newline;
/// identical documents produce byte-identical files.
inline void write_json_file(const std::string& path, const ojson& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw error("failed writing '" + path + "'");
}

inline ojson read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    try {
        return ojson::parse(in);
    } catch (const ojson::exception& e) {
        throw parse_error(0, std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

}  // namespace vcnet
