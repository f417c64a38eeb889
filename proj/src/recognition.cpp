#include "gridrec/recognition.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace gridrec {

void RecognitionTable::rebuild(const GridNetwork& net) {
    if (!net.has_node(root_)) {
        throw UnknownNodeError(root_);
    }
    levels_.clear();
    discovered_via_.clear();
    heap_ = BinomialHeap{};

    std::queue<NodeId> frontier;
    frontier.push(root_);
    std::map<NodeId, std::uint32_t> dist{{root_, 0}};
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        std::uint32_t du = dist.at(u);
        if (max_depth_ && du >= *max_depth_) {
            continue;
        }
        for (NodeId v : net.neighbors(u)) {
            if (!dist.count(v)) {
                dist.emplace(v, du + 1);
                frontier.push(v);
            }
        }
    }
    for (const auto& [id, level] : dist) {
        if (id == root_) {
            continue;  // never draw a cycle to the root
        }
        levels_.emplace(id, level);
        heap_.insert(HeapKey{level, id});
        std::set<NodeId> via;
        for (NodeId u : net.neighbors(id)) {
            std::uint32_t lu = u == root_ ? 0 : (dist.count(u) ? dist.at(u) : 0);
            if ((u == root_ || dist.count(u)) && lu + 1 == level) {
                via.insert(u);
            }
        }
        discovered_via_.emplace(id, std::move(via));
    }
    stale_ = false;
}

RecognitionTable RecognitionTable::build(const GridNetwork& net, NodeId root,
                                         std::optional<std::uint32_t> max_depth) {
    RecognitionTable table;
    table.root_ = root;
    table.max_depth_ = max_depth;
    table.rebuild(net);
    return table;
}

ChangeSummary RecognitionTable::refresh(const GridNetwork& net) {
    auto before = levels_;
    rebuild(net);
    ++epoch_;
    ChangeSummary summary;
    for (const auto& [id, level] : levels_) {
        auto it = before.find(id);
        if (it == before.end()) {
            summary.added.insert(id);
        } else if (it->second != level) {
            summary.releveled.insert(id);
        }
    }
    for (const auto& [id, level] : before) {
        if (!levels_.count(id)) {
            summary.removed.insert(id);
        }
    }
    return summary;
}

UpdateResult RecognitionTable::on_node_joined(const GridNetwork& net, NodeId id) {
    if (stale_) {
        throw StaleTableError{};
    }
    if (!net.has_node(id)) {
        throw UnknownNodeError(id);
    }
    if (id == root_ || levels_.count(id)) {
        throw DuplicateNodeError(id);
    }
    std::optional<std::uint32_t> best;
    for (NodeId u : net.neighbors(id)) {
        if (u == root_) {
            best = best ? std::min(*best, 0u) : 0u;
        } else if (auto it = levels_.find(u); it != levels_.end()) {
            best = best ? std::min(*best, it->second) : it->second;
        } else {
            // Edge into unrecognized territory: the join may pull a whole
            // region into reach.
            stale_ = true;
            return UpdateResult::NeedsFullRefresh;
        }
    }
    if (!best) {
        // No edge into the known region; a rebuild decides reachability.
        stale_ = true;
        return UpdateResult::NeedsFullRefresh;
    }
    std::uint32_t level = *best + 1;
    if (max_depth_ && level > *max_depth_) {
        stale_ = true;
        return UpdateResult::NeedsFullRefresh;
    }
    for (NodeId u : net.neighbors(id)) {
        std::uint32_t lu = u == root_ ? 0 : levels_.at(u);
        if (lu > level + 1) {
            // The newcomer shortcuts an existing node; third parties re-level.
            stale_ = true;
            return UpdateResult::NeedsFullRefresh;
        }
    }
    levels_.emplace(id, level);
    heap_.insert(HeapKey{level, id});
    std::set<NodeId> via;
    for (NodeId u : net.neighbors(id)) {
        std::uint32_t lu = u == root_ ? 0 : levels_.at(u);
        if (lu + 1 == level) {
            via.insert(u);
        }
        if (lu == level + 1) {
            discovered_via_.at(u).insert(id);
        }
    }
    discovered_via_.emplace(id, std::move(via));
    return UpdateResult::Applied;
}

UpdateResult RecognitionTable::on_node_left(NodeId id) {
    if (stale_) {
        throw StaleTableError{};
    }
    if (!levels_.count(id)) {
        throw UnknownNodeError(id);
    }
    for (const auto& [other, via] : discovered_via_) {
        if (other != id && via.count(id)) {
            // The departed node carried routing responsibility for `other`.
            stale_ = true;
            return UpdateResult::NeedsFullRefresh;
        }
    }
    heap_.erase(EntryHandle{id});
    levels_.erase(id);
    discovered_via_.erase(id);
    return UpdateResult::Applied;
}

std::optional<std::uint32_t> RecognitionTable::contains(NodeId id) const {
    auto it = levels_.find(id);
    if (it == levels_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string RecognitionTable::dump() const {
    std::vector<std::pair<std::uint32_t, NodeId>> order;
    order.reserve(levels_.size());
    for (const auto& [id, level] : levels_) {
        order.emplace_back(level, id);
    }
    std::sort(order.begin(), order.end());
    std::ostringstream out;
    for (const auto& [level, id] : order) {
        out << id << " " << level << " discoverers=";
        bool first = true;
        for (NodeId d : discovered_via_.at(id)) {
            if (!first) {
                out << ",";
            }
            out << d;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

NodeId nearest_supervisor(const std::vector<const RecognitionTable*>& tables,
                          NodeId failed,
                          const std::function<bool(NodeId)>& alive) {
    std::optional<std::pair<std::uint32_t, NodeId>> best;
    for (const RecognitionTable* table : tables) {
        if (!table || !alive(table->root())) {
            continue;
        }
        if (auto level = table->contains(failed)) {
            std::pair<std::uint32_t, NodeId> cand{*level, table->root()};
            if (!best || cand < *best) {
                best = cand;
            }
        }
    }
    if (!best) {
        throw NoSupervisorError(failed);
    }
    return best->second;
}

}  // namespace gridrec
