#ifndef GRIDREC_ADVISOR_HPP
#define GRIDREC_ADVISOR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridrec/recognition.hpp"

namespace gridrec {

struct DeadNodeError : std::runtime_error {
    explicit DeadNodeError(NodeId id)
        : std::runtime_error("node is not alive: " + std::to_string(id)) {}
};

struct ProfileParseError : std::runtime_error {
    ProfileParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};

/// A query and the best answer found so far. best_score never decreases
/// along the trace.
struct QueryState {
    std::uint64_t query_id = 0;
    std::string topic;
    double best_score = 0.0;
    std::optional<NodeId> best_node;
    std::vector<std::pair<NodeId, std::string>> trace;  // (node, action)
    bool no_answer = false;

    std::size_t hops() const { return trace.empty() ? 0 : trace.size() - 1; }
};

/// Per-node, per-topic competence scores in [0,1].
class KnowledgeProfiles {
public:
    void set(NodeId node, const std::string& topic, double score);
    double competence(NodeId node, const std::string& topic) const;
    const std::map<NodeId, std::map<std::string, double>>& all() const {
        return scores_;
    }

    /// Parses lines `node_id topic score`, `#` comments.
    static KnowledgeProfiles parse(const std::string& text);

private:
    std::map<NodeId, std::map<std::string, double>> scores_;
};

struct AdvisorConfig {
    double answer_threshold = 0.7;
};

using AlivePredicate = std::function<bool(NodeId)>;
using TableSet = std::map<NodeId, RecognitionTable>;

/// Builds one table per network node, for query routing.
TableSet build_tables(const GridNetwork& net);

/// State propagation through recognition children: the node applies its own
/// competence, then offers the state to its distance-1 children. When some
/// child improves the state, the query progresses with the improved state at
/// that child; when none does, the unchanged state is the one progressed.
QueryState retrieve(NodeId node, QueryState state, const TableSet& tables,
                    const KnowledgeProfiles& profiles,
                    const AdvisorConfig& config = {},
                    const AlivePredicate& alive = {});

/// Runs retrieve at the entry node, then escalates outward by strictly
/// increasing recognition distance (ties by id) until the threshold is met
/// or every reachable live node has been consulted. A query no live node can
/// answer comes back best-effort with no_answer set.
QueryState answer(NodeId entry_node, const std::string& topic,
                  const TableSet& tables, const KnowledgeProfiles& profiles,
                  const AdvisorConfig& config = {},
                  const AlivePredicate& alive = {});

/// Human-readable trace table for CLI output.
std::string format_trace(const QueryState& state);

}  // namespace gridrec

#endif
