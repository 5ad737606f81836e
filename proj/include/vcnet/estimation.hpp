#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/events.hpp"
#include "vcnet/graph.hpp"

namespace vcnet {

/// Sort values ascending, split them into three groups of near-equal size
/// (a remainder goes to the lower groups first), and return the group
/// means: {low, middle, high}. Needs at least 3 values.
inline std::array<double, 3> tertile_means(std::vector<double> values) {
    if (values.size() < 3)
        throw insufficient_data_error("tertile split needs at least 3 values");
    std::sort(values.begin(), values.end());
    const std::size_t base = values.size() / 3;
    const std::size_t rem = values.size() % 3;
    const std::array<std::size_t, 3> sizes = {base + (rem > 0 ? 1 : 0),
                                              base + (rem > 1 ? 1 : 0), base};
    std::array<double, 3> means{};
    std::size_t offset = 0;
    for (int group = 0; group < 3; ++group) {
        double sum = 0.0;
        for (std::size_t k = 0; k < sizes[group]; ++k) sum += values[offset + k];
        means[group] = sum / static_cast<double>(sizes[group]);
        offset += sizes[group];
    }
    return means;
}

namespace detail {

struct VcActivity {
    int first_period = 0;
    std::int64_t events = 0;      // events the firm participated in
    std::int64_t syndicated = 0;  // of those, events with >= 2 investors
};

inline std::vector<VcActivity> activity_by_vc(const EventLog& log) {
    std::vector<VcActivity> acts(log.vc_count());
    std::vector<bool> seen(log.vc_count(), false);
    for (const auto& event : log.events) {
        for (const VcId vc : event.investors) {
            auto& a = acts[vc];
            if (!seen[vc] || event.period < a.first_period) a.first_period = event.period;
            seen[vc] = true;
            ++a.events;
            if (event.investors.size() >= 2) ++a.syndicated;
        }
    }
    return acts;
}

inline std::uint64_t pair_key(VcId a, VcId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Unordered pairs co-investing in the given events, one entry per pair
/// per event (so a pair active in two events of the period appears twice).
inline std::vector<std::uint64_t> coinvesting_pairs(
    const std::vector<const InvestmentEvent*>& events) {
    std::vector<std::uint64_t> keys;
    for (const InvestmentEvent* event : events) {
        const auto& inv = event->investors;
        for (std::size_t a = 0; a < inv.size(); ++a)
            for (std::size_t b = a + 1; b < inv.size(); ++b)
                keys.push_back(pair_key(inv[a], inv[b]));
    }
    return keys;
}

inline std::map<int, std::vector<const InvestmentEvent*>> events_by_period(const EventLog& log) {
    std::map<int, std::vector<const InvestmentEvent*>> by_period;
    for (const auto& event : log.events) by_period[event.period].push_back(&event);
    return by_period;
}

}  // namespace detail

/// Investment-frequency tertiles. A firm's rate is its event count divided
/// by its tenure: the number of periods from its first appearance through
/// the last period of the data set. Dividing by tenure rather than by
/// active periods keeps occasional investors' rates below 1 and does not
/// penalize firms that entered late.
inline std::array<double, 3> estimate_frequency_tertiles(const EventLog& log) {
    if (log.events.empty()) throw insufficient_data_error("no events");
    int last_period = log.events.front().period;
    for (const auto& event : log.events) last_period = std::max(last_period, event.period);
    const auto acts = detail::activity_by_vc(log);
    std::vector<double> rates;
    rates.reserve(acts.size());
    for (const auto& a : acts) {
        const double tenure = static_cast<double>(last_period - a.first_period + 1);
        rates.push_back(static_cast<double>(a.events) / tenure);
    }
    return tertile_means(std::move(rates));
}

/// Syndication-tendency tertiles: per firm, the share of its events that
/// had at least one co-investor.
inline std::array<double, 3> estimate_tendency_tertiles(const EventLog& log) {
    const auto acts = detail::activity_by_vc(log);
    std::vector<double> shares;
    shares.reserve(acts.size());
    for (const auto& a : acts)
        shares.push_back(static_cast<double>(a.syndicated) / static_cast<double>(a.events));
    return tertile_means(std::move(shares));
}

/// Probability that a pair with a given number of past joint investments
/// co-invests again in the next period. For every boundary between
/// consecutive observed periods, each pair with a positive cumulative
/// count c (from all periods up to the boundary) contributes one trial to
/// bucket c, and a success when it co-invests in the following period.
/// Buckets that never occur are absent from the result.
inline std::map<int, double> invitation_curve(const EventLog& log) {
    const auto by_period = detail::events_by_period(log);
    std::map<std::uint64_t, int> cumulative;
    std::map<int, std::pair<std::int64_t, std::int64_t>> buckets;  // count -> {trials, successes}
    for (auto it = by_period.begin(); it != by_period.end(); ++it) {
        for (const std::uint64_t key : detail::coinvesting_pairs(it->second)) ++cumulative[key];
        auto next = std::next(it);
        if (next == by_period.end()) break;
        const auto next_keys = detail::coinvesting_pairs(next->second);
        const std::set<std::uint64_t> next_pairs(next_keys.begin(), next_keys.end());
        for (const auto& [key, count] : cumulative) {
            auto& bucket = buckets[count];
            ++bucket.first;
            if (next_pairs.contains(key)) ++bucket.second;
        }
    }
    std::map<int, double> curve;
    for (const auto& [count, tally] : buckets)
        curve[count] = static_cast<double>(tally.second) / static_cast<double>(tally.first);
    return curve;
}

/// Key for the syndication-by-distance curve. Pairs with past joint
/// investments sit closer than one hop: a pair with c joint events is in
/// class "1/c". Pairs without a direct tie are classified by their hop
/// distance (2, 3, ...). Classes order as 1/c ascending, then hops.
struct DistanceClass {
    bool reciprocal = false;  // true: value is a joint-investment count c
    int value = 0;            // c when reciprocal, hop distance otherwise

    std::string label() const {
        if (!reciprocal) return std::to_string(value);
        return value == 1 ? "1" : "1/" + std::to_string(value);
    }

    double numeric() const {
        return reciprocal ? 1.0 / static_cast<double>(value) : static_cast<double>(value);
    }

    friend bool operator<(const DistanceClass& a, const DistanceClass& b) {
        const int ra = a.reciprocal ? -a.value : a.value;
        const int rb = b.reciprocal ? -b.value : b.value;
        if (a.reciprocal != b.reciprocal) return a.reciprocal;
        return ra < rb;
    }
    bool operator==(const DistanceClass&) const = default;
};

/// Probability of co-investing in the next period as a function of current
/// network distance. Evaluated at every boundary between consecutive
/// periods over all pairs of firms already present; pairs in different
/// components fall in no class and are skipped.
inline std::map<DistanceClass, double> syndication_by_distance(const EventLog& log) {
    const auto by_period = detail::events_by_period(log);
    SyndicationGraph g;
    g.add_nodes(log.vc_count());
    std::vector<int> first_period(log.vc_count(), 0);
    std::vector<bool> appeared(log.vc_count(), false);
    std::map<DistanceClass, std::pair<std::int64_t, std::int64_t>> buckets;
    for (auto it = by_period.begin(); it != by_period.end(); ++it) {
        for (const InvestmentEvent* event : it->second) {
            for (const VcId vc : event->investors) appeared[vc] = true;
            const auto& inv = event->investors;
            for (std::size_t a = 0; a < inv.size(); ++a)
                for (std::size_t b = a + 1; b < inv.size(); ++b)
                    g.record_coinvestment(inv[a], inv[b]);
        }
        auto next = std::next(it);
        if (next == by_period.end()) break;
        const auto next_keys = detail::coinvesting_pairs(next->second);
        const std::set<std::uint64_t> next_pairs(next_keys.begin(), next_keys.end());
        for (VcId i = 0; i < g.node_count(); ++i) {
            if (!appeared[i]) continue;
            const auto dist = bfs_distances(g, i);
            for (VcId j = i + 1; j < g.node_count(); ++j) {
                if (!appeared[j]) continue;
                DistanceClass cls;
                if (const int w = g.weight(i, j); w > 0) {
                    cls = {true, w};
                } else if (dist[j] >= 2) {
                    cls = {false, dist[j]};
                } else {
                    continue;  // different components: distance undefined
                }
                auto& bucket = buckets[cls];
                ++bucket.first;
                if (next_pairs.contains(detail::pair_key(i, j))) ++bucket.second;
            }
        }
    }
    std::map<DistanceClass, double> curve;
    for (const auto& [cls, tally] : buckets)
        curve[cls] = static_cast<double>(tally.second) / static_cast<double>(tally.first);
    return curve;
}

/// The estimated quantities a simulation is parameterized with.
struct ParameterEstimate {
    std::array<double, 3> freq_tertiles{};
    std::array<double, 3> tendency_tertiles{};
    std::map<int, double> invitation_curve;
};

inline ParameterEstimate estimate_parameters(const EventLog& log) {
    return {estimate_frequency_tertiles(log), estimate_tendency_tertiles(log),
            invitation_curve(log)};
}

}  // namespace vcnet
