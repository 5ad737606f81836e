#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vcnet/errors.hpp"
#include "vcnet/graph.hpp"

namespace vcnet {

/// One investment round: a set of co-investing firms backing one target
/// company in one period. Investors are stored as sorted unique VcIds.
struct InvestmentEvent {
    std::string id;
    int period = 0;
    std::string target;
    std::vector<VcId> investors;

    bool operator==(const InvestmentEvent&) const = default;
};

/// Parsed event history plus the name table mapping dense VcIds back to
/// the investor strings of the source data. Events keep their order of
/// first appearance; ids are assigned in order of first appearance too.
struct EventLog {
    std::vector<InvestmentEvent> events;
    std::vector<std::string> names;
    std::vector<std::string> warnings;  // non-fatal oddities found while parsing

    std::size_t vc_count() const { return names.size(); }

    VcId id_for(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        const VcId id = static_cast<VcId>(names.size());
        names.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    /// Distinct periods in ascending order.
    std::vector<int> periods() const {
        std::vector<int> out;
        for (const auto& e : events) out.push_back(e.period);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool operator==(const EventLog& other) const {
        return events == other.events && names == other.names;
    }

private:
    std::map<std::string, VcId> index_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace detail

/// Parse a long-format event CSV: header "event_id,period,target,investor",
/// one row per (event, investor). Rows of the same event may be scattered
/// through the file; they are merged by event id and must agree on period
/// and target. A duplicate (event, investor) row is tolerated with a
/// warning. An empty stream yields an empty log.
inline EventLog parse_events(std::istream& in) {
    EventLog log;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::map<std::string, std::size_t> event_index;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split_csv_row(line);
        if (!saw_header) {
            const std::vector<std::string> expected = {"event_id", "period", "target", "investor"};
            if (fields != expected)
                throw parse_error(line_no, "expected header 'event_id,period,target,investor'");
            saw_header = true;
            continue;
        }
        if (fields.size() != 4) throw parse_error(line_no, "expected 4 fields");
        const std::string& event_id = fields[0];
        if (event_id.empty()) throw parse_error(line_no, "empty event_id");
        int period = 0;
        try {
            std::size_t used = 0;
            period = std::stoi(fields[1], &used);
            if (used != fields[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw parse_error(line_no, "period is not an integer");
        }
        const std::string& target = fields[2];
        const std::string& investor = fields[3];
        if (investor.empty()) throw parse_error(line_no, "empty investor");

        auto [slot, inserted] = event_index.try_emplace(event_id, log.events.size());
        if (inserted) {
            log.events.push_back({event_id, period, target, {}});
        } else {
            const InvestmentEvent& seen = log.events[slot->second];
            if (seen.period != period)
                throw parse_error(line_no, "event '" + event_id + "' listed with two periods");
            if (seen.target != target)
                throw parse_error(line_no, "event '" + event_id + "' listed with two targets");
        }
        InvestmentEvent& event = log.events[slot->second];
        const VcId vc = log.id_for(investor);
        auto pos = std::lower_bound(event.investors.begin(), event.investors.end(), vc);
        if (pos != event.investors.end() && *pos == vc) {
            log.warnings.push_back("line " + std::to_string(line_no) + ": duplicate investor '" +
                                   investor + "' in event '" + event_id + "'");
            continue;
        }
        event.investors.insert(pos, vc);
    }
    return log;
}

/// Inverse of parse_events: one row per (event, investor), events in
/// stored order, investors ascending.
inline void write_events_csv(const EventLog& log, std::ostream& out) {
    out << "event_id,period,target,investor\n";
    for (const auto& event : log.events) {
        for (const VcId vc : event.investors) {
            out << event.id << ',' << event.period << ',' << event.target << ','
                << log.names[vc] << '\n';
        }
    }
}

/// Project the event history onto the co-investment network: every
/// unordered investor pair of every event contributes one joint
/// investment. Single-investor events add no edges; firms that only ever
/// invest alone still appear as isolated nodes.
inline SyndicationGraph project(const EventLog& log) {
    SyndicationGraph g;
    g.add_nodes(log.vc_count());
    for (const auto& event : log.events) {
        const auto& inv = event.investors;
        for (std::size_t a = 0; a < inv.size(); ++a)
            for (std::size_t b = a + 1; b < inv.size(); ++b)
                g.record_coinvestment(inv[a], inv[b]);
    }
    return g;
}

}  // namespace vcnet
