#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/events.hpp"
#include "vcnet/graph.hpp"
#include "vcnet/rng.hpp"

namespace vcnet {

/// Half-up rounding (0.5 rounds toward +infinity), used for every growth
/// quantity: 97.5 firms round to 98.
inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

enum class ModelVariant { random_joint, relational, structural };

inline const char* to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::random_joint: return "random";
        case ModelVariant::relational: return "relational";
        case ModelVariant::structural: return "structural";
    }
    throw config_error("invalid model variant");
}

inline ModelVariant variant_from_string(std::string_view name) {
    if (name == "random") return ModelVariant::random_joint;
    if (name == "relational") return ModelVariant::relational;
    if (name == "structural") return ModelVariant::structural;
    throw config_error("unknown variant '" + std::string(name) +
                       "' (expected random, relational or structural)");
}

/// Everything a run depends on. Field names double as the config JSON keys.
struct SimulationConfig {
    int m1 = 75;                      // VC count at the first step
    double growth_rate = 1.3;         // population multiplier per step
    double target_multiplier = 5.0;   // targets per VC, n_t = 5 * m_t
    int horizon = 14;                 // number of evolution steps T
    std::array<double, 3> freq_tertiles = {0.26, 0.80, 5.05};
    std::array<double, 3> tendency_tertiles = {0.30, 0.59, 0.96};
    ModelVariant variant = ModelVariant::random_joint;
    double elite_fraction = 0.03;
    std::uint64_t seed = 0;

    void validate() const {
        if (m1 < 1) throw config_error("m1 must be >= 1");
        if (!(growth_rate > 1.0)) throw config_error("growth_rate must be > 1");
        if (!(target_multiplier > 0.0)) throw config_error("target_multiplier must be > 0");
        if (horizon < 1) throw config_error("horizon must be >= 1");
        for (double f : freq_tertiles)
            if (!(f >= 0.0)) throw config_error("freq_tertiles must be >= 0");
        for (double q : tendency_tertiles)
            if (!(q >= 0.0 && q <= 1.0)) throw config_error("tendency_tertiles must lie in [0,1]");
        for (int k = 0; k < 2; ++k) {
            if (freq_tertiles[k] > freq_tertiles[k + 1])
                throw config_error("freq_tertiles must be non-decreasing");
            if (tendency_tertiles[k] > tendency_tertiles[k + 1])
                throw config_error("tendency_tertiles must be non-decreasing");
        }
        if (!(elite_fraction > 0.0 && elite_fraction <= 1.0))
            throw config_error("elite_fraction must lie in (0,1]");
    }
};

/// Static per-firm parameters, fixed at creation for the firm's lifetime.
struct VcAttributes {
    double freq = 0.0;      // F: expected investments per step
    double tendency = 0.0;  // Q: probability of issuing an invitation
    int birth_step = 0;

    bool operator==(const VcAttributes&) const = default;
};

/// Mutable state of one run; run() snapshots it after every step.
struct SimState {
    SyndicationGraph graph;
    std::vector<VcAttributes> attributes;  // indexed by VcId
    int step = 0;
    int target_count = 0;  // n_t of the current step
    EventLog event_log;    // full synthetic history, replayable via project()
};

struct GrowthPoint {
    int vcs = 0;      // m_t
    int targets = 0;  // n_t

    bool operator==(const GrowthPoint&) const = default;
};

/// Population and target counts for step t (1-based): m_t rounds
/// m1 * growth_rate^(t-1), and n_t rounds target_multiplier times the
/// unrounded population. Rounding n_t from the rounded m_t would give 490
/// instead of the expected 488 at t=2. The power is accumulated by
/// repeated multiplication so the schedule does not depend on libm's
/// pow() accuracy.
inline GrowthPoint growth_schedule(const SimulationConfig& cfg, int t) {
    if (t < 1 || t > cfg.horizon)
        throw step_range_error("step " + std::to_string(t) + " outside 1.." +
                               std::to_string(cfg.horizon));
    double raw = cfg.m1;
    for (int k = 1; k < t; ++k) raw *= cfg.growth_rate;
    return {round_half_up(raw), round_half_up(cfg.target_multiplier * raw)};
}

/// Add firms to the state. Each newcomer draws its F tertile and then its
/// Q tertile, each uniformly among the three values, realizing the nine
/// (F, Q) firm types. The event log's name table grows in lockstep so a
/// firm's name is always the decimal form of its id.
inline void spawn_nodes(SimState& state, SeededRng& rng, const SimulationConfig& cfg,
                        int new_count) {
    for (int k = 0; k < new_count; ++k) {
        const VcId id = state.graph.add_node();
        VcAttributes attrs;
        attrs.freq = cfg.freq_tertiles[rng.next_below(3)];
        attrs.tendency = cfg.tendency_tertiles[rng.next_below(3)];
        attrs.birth_step = state.step;
        state.attributes.push_back(attrs);
        const VcId named = state.event_log.id_for(std::to_string(id));
        assert(named == id);
        (void)named;
    }
}

/// First stage of a step: every firm i makes Poisson(F_i) investments,
/// each into a uniformly chosen target of this step. All firms hitting the
/// same target form one event; every pair in an event becomes a joint
/// investment. Firms are processed in ascending id order so the draw
/// sequence is reproducible. Returns the index of the first event created
/// (events from here to the end of the log belong to this step).
inline std::size_t random_stage(SimState& state, SeededRng& rng) {
    const std::size_t first_new = state.event_log.events.size();
    const auto n = static_cast<VcId>(state.graph.node_count());
    std::map<int, std::vector<VcId>> by_target;
    for (VcId i = 0; i < n; ++i) {
        const int investments = rng.next_poisson(state.attributes[i].freq);
        for (int k = 0; k < investments; ++k) {
            const auto target = static_cast<int>(
                rng.next_below(static_cast<std::uint64_t>(state.target_count)));
            by_target[target].push_back(i);
        }
    }
    for (auto& [target, investors] : by_target) {
        // A firm may hit the same target more than once; that is still one
        // participation in one event.
        investors.erase(std::unique(investors.begin(), investors.end()), investors.end());
        InvestmentEvent event;
        event.id = "e" + std::to_string(state.step) + "_" + std::to_string(target);
        event.period = state.step;
        event.target = "c" + std::to_string(state.step) + "_" + std::to_string(target);
        event.investors = investors;
        for (std::size_t a = 0; a < investors.size(); ++a)
            for (std::size_t b = a + 1; b < investors.size(); ++b)
                state.graph.record_coinvestment(investors[a], investors[b]);
        state.event_log.events.push_back(std::move(event));
    }
    return first_new;
}

/// Invitation weights for the relational rule: each current partner j is a
/// candidate with probability weight n_ij / sum_k n_ik. The weights form a
/// distribution over partners; an isolated firm has no candidates.
inline std::map<VcId, double> relational_invite_weights(const SyndicationGraph& g, VcId i) {
    const auto& nbrs = g.neighbors(i);
    double total = 0.0;
    for (const auto& [j, w] : nbrs) total += w;
    std::map<VcId, double> weights;
    for (const auto& [j, w] : nbrs) weights[j] = static_cast<double>(w) / total;
    return weights;
}

/// Invitation weights for the structural rule: partners keep their
/// relational weights; additionally every non-adjacent firm j with a
/// second-order score m_ij > 0 becomes a candidate with weight
/// m_ij / max(M), where max(M) is the largest off-diagonal entry of M.
/// The union is a score list, not a distribution — the sampling step
/// renormalizes it.
inline std::map<VcId, double> structural_invite_weights(const SyndicationGraph& g, VcId i,
                                                        const SecondOrderMatrix& m) {
    std::map<VcId, double> weights = relational_invite_weights(g, i);
    const std::int64_t max_m = m.max_off_diagonal();
    if (max_m > 0) {
        for (const auto& [j, score] : m.row(i)) {
            if (j == i || score <= 0) continue;
            if (g.weight(i, j) > 0) continue;  // partner: relational weight already set
            weights[j] = static_cast<double>(score) / static_cast<double>(max_m);
        }
    }
    return weights;
}

/// Convenience overload that derives the second-order matrix itself.
inline std::map<VcId, double> structural_invite_weights(const SyndicationGraph& g, VcId i) {
    return structural_invite_weights(g, i, second_order(g));
}

namespace detail {

/// Sample a candidate proportionally to its weight, walking candidates in
/// ascending id order. Consumes exactly one unit draw.
inline VcId weighted_pick(const std::map<VcId, double>& weights, SeededRng& rng) {
    assert(!weights.empty());
    double total = 0.0;
    for (const auto& [j, w] : weights) total += w;
    const double r = rng.next_unit() * total;
    double acc = 0.0;
    for (const auto& [j, w] : weights) {
        acc += w;
        if (r < acc) return j;
    }
    return weights.rbegin()->first;  // numeric guard: r == total
}

}  // namespace detail

/// Second stage of a step: every original investor of every event created
/// this step issues at most one invitation, with probability equal to its
/// tendency Q. The invitee is drawn from the variant's weight mapping,
/// joins the event, and ties to every current member. Invitees do not
/// invite in turn. A zero tendency consumes no randomness, so a run with
/// all tendencies zero is draw-for-draw identical to the random variant.
/// The second-order matrix is computed once per step; adjacency and
/// relational weights stay live as the stage adds edges.
inline void invitation_stage(SimState& state, SeededRng& rng, ModelVariant variant,
                             std::size_t first_event) {
    if (variant == ModelVariant::random_joint)
        throw config_error("the random variant has no invitation stage");
    SecondOrderMatrix m;
    if (variant == ModelVariant::structural) m = second_order(state.graph);
    for (std::size_t idx = first_event; idx < state.event_log.events.size(); ++idx) {
        InvestmentEvent& event = state.event_log.events[idx];
        const std::vector<VcId> inviters = event.investors;  // original members only
        for (const VcId i : inviters) {
            const double q = state.attributes[i].tendency;
            if (q <= 0.0) continue;
            if (rng.next_unit() >= q) continue;
            const auto weights = variant == ModelVariant::relational
                                     ? relational_invite_weights(state.graph, i)
                                     : structural_invite_weights(state.graph, i, m);
            if (weights.empty()) continue;
            const VcId invitee = detail::weighted_pick(weights, rng);
            auto pos = std::lower_bound(event.investors.begin(), event.investors.end(), invitee);
            if (pos != event.investors.end() && *pos == invitee) continue;  // already in
            for (const VcId member : event.investors)
                state.graph.record_coinvestment(member, invitee);
            event.investors.insert(pos, invitee);
        }
    }
}

/// Run the full evolution: for each step, grow the population, let firms
/// invest at random, then (for the embedded variants) let them invite.
/// Returns one state snapshot per step. The trajectory is a pure function
/// of the config, seed included.
inline std::vector<SimState> run(const SimulationConfig& cfg) {
    cfg.validate();
    SeededRng rng(cfg.seed);
    SimState state;
    std::vector<SimState> snapshots;
    snapshots.reserve(static_cast<std::size_t>(cfg.horizon));
    for (int t = 1; t <= cfg.horizon; ++t) {
        const GrowthPoint growth = growth_schedule(cfg, t);
        state.step = t;
        state.target_count = growth.targets;
        const int delta = growth.vcs - static_cast<int>(state.graph.node_count());
        if (delta > 0) spawn_nodes(state, rng, cfg, delta);
        const std::size_t first_event = random_stage(state, rng);
        if (cfg.variant != ModelVariant::random_joint)
            invitation_stage(state, rng, cfg.variant, first_event);
        snapshots.push_back(state);
    }
    return snapshots;
}

}  // namespace vcnet
