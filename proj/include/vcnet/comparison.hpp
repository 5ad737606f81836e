#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/metrics.hpp"
#include "vcnet/motifs.hpp"

namespace vcnet {

/// Two-sample Kolmogorov–Smirnov statistic between histograms: the
/// largest gap between the two empirical CDFs over the union of values.
inline double ks_distance(const Histogram& a, const Histogram& b) {
    if (a.empty() || b.empty()) throw insufficient_data_error("KS needs non-empty histograms");
    double total_a = 0, total_b = 0;
    for (const auto& [v, c] : a) total_a += static_cast<double>(c);
    for (const auto& [v, c] : b) total_b += static_cast<double>(c);
    auto ia = a.begin();
    auto ib = b.begin();
    double cum_a = 0, cum_b = 0, d = 0;
    while (ia != a.end() || ib != b.end()) {
        std::int64_t value;
        if (ib == b.end()) value = ia->first;
        else if (ia == a.end()) value = ib->first;
        else value = std::min(ia->first, ib->first);
        if (ia != a.end() && ia->first == value) { cum_a += static_cast<double>(ia->second); ++ia; }
        if (ib != b.end() && ib->first == value) { cum_b += static_cast<double>(ib->second); ++ib; }
        d = std::max(d, std::abs(cum_a / total_a - cum_b / total_b));
    }
    return d;
}

/// KS between two raw samples (used for per-node clustering coefficients,
/// avoiding any binning choice).
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw insufficient_data_error("KS needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0;
    while (ia < a.size() || ib < b.size()) {
        double value;
        if (ib == b.size()) value = a[ia];
        else if (ia == a.size()) value = b[ib];
        else value = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] == value) ++ia;
        while (ib < b.size() && b[ib] == value) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    return d;
}

/// The fixed 8-component indicator vector used for Fig.-11 style
/// correlation: the per-class Table-1 rows, elite block first —
/// [elite degree, elite k-shell, elite betweenness, elite frequency,
///  follower degree, follower k-shell, follower betweenness,
///  follower frequency]. Components may be absent (e.g. no frequency
/// data); correlation drops them pairwise.
inline std::array<std::optional<double>, 8> indicator_vector(const IndicatorTable& t) {
    return {t.elite.degree,    t.elite.k_shell,    t.elite.betweenness,
            t.elite.investment_frequency,          t.follower.degree,
            t.follower.k_shell, t.follower.betweenness, t.follower.investment_frequency};
}

/// Pearson correlation between two paired samples; nullopt when fewer
/// than 3 pairs or either side has zero variance. Undefined is reported
/// as absent, never coerced to 0.
inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw error("pearson: length mismatch");
    const auto n = static_cast<double>(x.size());
    if (x.size() < 3) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) { mx += x[k]; my += y[k]; }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

/// Correlation between two networks' indicator vectors. Components absent
/// on either side are dropped pairwise.
inline std::optional<double> indicator_correlation(const IndicatorTable& model,
                                                   const IndicatorTable& reference) {
    const auto vm = indicator_vector(model);
    const auto vr = indicator_vector(reference);
    std::vector<double> x, y;
    for (std::size_t k = 0; k < vm.size(); ++k) {
        if (vm[k] && vr[k]) {
            x.push_back(*vm[k]);
            y.push_back(*vr[k]);
        }
    }
    return pearson(x, y);
}

/// One network state handed to the comparison: the graph at a step plus
/// optional per-node investment frequencies (empty when unknown).
struct NetworkSnapshot {
    int step = 0;
    SyndicationGraph graph;
    std::vector<double> investment_freq;
};

/// Distances and correlation for one aligned step. KS values are absent
/// when a distribution is empty on either side (e.g. no edges yet).
struct StepComparison {
    int step = 0;
    std::optional<double> degree_ks;
    std::optional<double> strength_ks;
    std::optional<double> clustering_ks;
    std::optional<double> correlation;
};

/// Full model-vs-reference evaluation: per-step distribution distances
/// and indicator correlation, plus motif censuses at the final step.
struct ComparisonReport {
    std::vector<StepComparison> steps;
    int final_step = 0;
    MotifCounts model_motifs;
    MotifCounts reference_motifs;
};

namespace detail {

inline IndicatorTable snapshot_indicators(const NetworkSnapshot& s, double elite_fraction) {
    const auto bc = betweenness(s.graph);
    const auto elites = detect_elites(s.graph, elite_fraction, bc);
    const auto partition = assign_groups(s.graph, elites);
    return indicator_table(s.graph, partition, s.investment_freq);
}

template <typename F>
inline std::optional<double> defined_or_absent(F&& compute) {
    try {
        return compute();
    } catch (const insufficient_data_error&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// Compare a model trajectory against a reference trajectory aligned by
/// step number. Every model step must exist on the reference side.
inline ComparisonReport compare_runs(std::span<const NetworkSnapshot> model,
                                     std::span<const NetworkSnapshot> reference,
                                     double elite_fraction = 0.03) {
    if (model.empty() || reference.empty())
        throw insufficient_data_error("comparison needs at least one snapshot per side");
    auto find_reference = [&](int step) -> const NetworkSnapshot& {
        for (const auto& r : reference)
            if (r.step == step) return r;
        std::string steps;
        for (const auto& r : reference)
            steps += (steps.empty() ? "" : ", ") + std::to_string(r.step);
        throw alignment_error("reference has no step " + std::to_string(step) +
                              " (available: " + steps + ")");
    };
    ComparisonReport report;
    for (const auto& m : model) {
        const NetworkSnapshot& r = find_reference(m.step);
        StepComparison row;
        row.step = m.step;
        row.degree_ks = detail::defined_or_absent(
            [&] { return ks_distance(degree_distribution(m.graph), degree_distribution(r.graph)); });
        row.strength_ks = detail::defined_or_absent([&] {
            return ks_distance(strength_distribution(m.graph), strength_distribution(r.graph));
        });
        row.clustering_ks = detail::defined_or_absent(
            [&] { return ks_distance(local_clustering(m.graph), local_clustering(r.graph)); });
        row.correlation = indicator_correlation(detail::snapshot_indicators(m, elite_fraction),
                                                detail::snapshot_indicators(r, elite_fraction));
        report.steps.push_back(row);
    }
    const NetworkSnapshot& last_model = model.back();
    report.final_step = last_model.step;
    report.model_motifs = census(last_model.graph);
    report.reference_motifs = census(find_reference(last_model.step).graph);
    return report;
}

/// Compare a model trajectory against one static reference network (the
/// Fig.-11 design: the reference is reused at every step).
inline ComparisonReport compare_runs(std::span<const NetworkSnapshot> model,
                                     const NetworkSnapshot& static_reference,
                                     double elite_fraction = 0.03) {
    std::vector<NetworkSnapshot> aligned;
    aligned.reserve(model.size());
    for (const auto& m : model) {
        NetworkSnapshot copy = static_reference;
        copy.step = m.step;
        aligned.push_back(std::move(copy));
    }
    return compare_runs(model, aligned, elite_fraction);
}

}  // namespace vcnet
