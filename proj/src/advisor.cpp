#include "gridrec/advisor.hpp"

#include <algorithm>
#include <sstream>

namespace gridrec {

void KnowledgeProfiles::set(NodeId node, const std::string& topic, double score) {
    if (score < 0.0 || score > 1.0) {
        throw std::invalid_argument("competence must be in [0,1]");
    }
    scores_[node][topic] = score;
}

double KnowledgeProfiles::competence(NodeId node, const std::string& topic) const {
    auto it = scores_.find(node);
    if (it == scores_.end()) {
        return 0.0;
    }
    auto jt = it->second.find(topic);
    return jt == it->second.end() ? 0.0 : jt->second;
}

KnowledgeProfiles KnowledgeProfiles::parse(const std::string& text) {
    KnowledgeProfiles profiles;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream fields(line);
        NodeId node = 0;
        std::string topic;
        double score = 0.0;
        if (!(fields >> node)) {
            continue;
        }
        if (!(fields >> topic >> score)) {
            throw ProfileParseError(lineno, "expected `node_id topic score`");
        }
        if (score < 0.0 || score > 1.0) {
            throw ProfileParseError(lineno, "score out of [0,1]");
        }
        profiles.set(node, topic, score);
    }
    return profiles;
}

TableSet build_tables(const GridNetwork& net) {
    TableSet tables;
    for (NodeId id : net.node_ids()) {
        tables.emplace(id, RecognitionTable::build(net, id));
    }
    return tables;
}

namespace {

bool always_alive(NodeId) { return true; }

// Competence is adopted when it strictly beats the best so far, or ties it
// from a smaller id.
bool consider(QueryState& state, NodeId node, double score) {
    if (score > state.best_score ||
        (score == state.best_score && state.best_node && node < *state.best_node)) {
        state.best_score = score;
        state.best_node = node;
        return true;
    }
    if (!state.best_node && score >= state.best_score) {
        state.best_score = score;
        state.best_node = node;
        return true;
    }
    return false;
}

std::vector<NodeId> children_of(NodeId node, const TableSet& tables,
                                const AlivePredicate& alive) {
    std::vector<NodeId> kids;
    auto it = tables.find(node);
    if (it == tables.end()) {
        return kids;
    }
    for (const auto& [id, level] : it->second.levels()) {
        if (level == 1 && alive(id)) {
            kids.push_back(id);
        }
    }
    return kids;  // map order: ascending id
}

// Returns true once the threshold is met.
bool retrieve_impl(NodeId node, QueryState& state, const TableSet& tables,
                   const KnowledgeProfiles& profiles, const AdvisorConfig& config,
                   const AlivePredicate& alive, std::set<NodeId>& visited) {
    visited.insert(node);
    state.trace.emplace_back(node, "visit");
    consider(state, node, profiles.competence(node, state.topic));
    if (state.best_score >= config.answer_threshold) {
        state.trace.back().second = "answer";
        return true;
    }
    while (true) {
        // Offer the state to every unvisited recognition child; a child that
        // raises the best answer becomes the node the query progresses with.
        std::optional<std::pair<double, NodeId>> improver;
        for (NodeId child : children_of(node, tables, alive)) {
            if (visited.count(child)) {
                continue;
            }
            visited.insert(child);
            double score = profiles.competence(child, state.topic);
            bool improves =
                score > state.best_score ||
                (score == state.best_score && state.best_node &&
                 child < *state.best_node);
            if (improves &&
                (!improver || score > improver->first ||
                 (score == improver->first && child < improver->second))) {
                improver = {score, child};
            }
        }
        if (!improver) {
            return false;  // no child changed the state; progress unchanged
        }
        consider(state, improver->second, improver->first);
        state.trace.emplace_back(improver->second, "raise");
        if (state.best_score >= config.answer_threshold) {
            state.trace.back().second = "answer";
            return true;
        }
        node = improver->second;
    }
}

}  // namespace

QueryState retrieve(NodeId node, QueryState state, const TableSet& tables,
                    const KnowledgeProfiles& profiles, const AdvisorConfig& config,
                    const AlivePredicate& alive) {
    const AlivePredicate& is_alive = alive ? alive : always_alive;
    if (!is_alive(node)) {
        throw DeadNodeError(node);
    }
    std::set<NodeId> visited;
    for (const auto& [id, action] : state.trace) {
        visited.insert(id);
    }
    retrieve_impl(node, state, tables, profiles, config, is_alive, visited);
    return state;
}

QueryState answer(NodeId entry_node, const std::string& topic,
                  const TableSet& tables, const KnowledgeProfiles& profiles,
                  const AdvisorConfig& config, const AlivePredicate& alive) {
    const AlivePredicate& is_alive = alive ? alive : always_alive;
    if (!is_alive(entry_node)) {
        throw DeadNodeError(entry_node);
    }
    QueryState state;
    state.topic = topic;
    std::set<NodeId> visited;
    if (retrieve_impl(entry_node, state, tables, profiles, config, is_alive,
                      visited)) {
        return state;
    }
    // Escalate: consult live nodes by increasing recognition distance from
    // the entry point, ids ascending within a level.
    const RecognitionTable& entry_table = tables.at(entry_node);
    std::vector<std::pair<std::uint32_t, NodeId>> order;
    for (const auto& [id, level] : entry_table.levels()) {
        if (is_alive(id)) {
            order.emplace_back(level, id);
        }
    }
    std::sort(order.begin(), order.end());
    for (const auto& [level, id] : order) {
        if (visited.count(id)) {
            continue;
        }
        visited.insert(id);
        state.trace.emplace_back(id, "consult");
        consider(state, id, profiles.competence(id, topic));
        if (state.best_score >= config.answer_threshold) {
            state.trace.back().second = "answer";
            return state;
        }
    }
    state.no_answer = true;
    return state;
}

std::string format_trace(const QueryState& state) {
    std::ostringstream out;
    out << "step node action\n";
    std::size_t step = 1;
    for (const auto& [node, action] : state.trace) {
        out << step++ << " " << node << " " << action << "\n";
    }
    if (state.no_answer) {
        out << "no answer";
    } else {
        out << "answer node=" << (state.best_node ? std::to_string(*state.best_node)
                                                  : std::string("none"));
    }
    out << " score=" << state.best_score << "\n";
    return out.str();
}

}  // namespace gridrec
