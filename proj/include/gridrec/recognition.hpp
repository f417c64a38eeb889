#ifndef GRIDREC_RECOGNITION_HPP
#define GRIDREC_RECOGNITION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridrec/binomial_heap.hpp"
#include "gridrec/graph.hpp"

namespace gridrec {

struct StaleTableError : std::runtime_error {
    StaleTableError()
        : std::runtime_error("table is stale; refresh before further updates") {}
};

struct NoSupervisorError : std::runtime_error {
    explicit NoSupervisorError(NodeId failed)
        : std::runtime_error("no live node recognizes node " +
                             std::to_string(failed)) {}
};

/// Ids touched by a refresh, relative to the previous table contents.
struct ChangeSummary {
    std::set<NodeId> added;
    std::set<NodeId> removed;
    std::set<NodeId> releveled;
    bool empty() const {
        return added.empty() && removed.empty() && releveled.empty();
    }
};

enum class UpdateResult { Applied, NeedsFullRefresh };

/// One node's view of every reachable node, organized by hop-distance level
/// and stored in a binomial heap keyed (level, id). The root itself is never
/// a member of its own table.
class RecognitionTable {
public:
    static RecognitionTable build(const GridNetwork& net, NodeId root,
                                  std::optional<std::uint32_t> max_depth = {});

    /// Rebuilds from the current network and reports the difference.
    /// Clears staleness; bumps the epoch.
    ChangeSummary refresh(const GridNetwork& net);

    /// Incremental insert of a node that just joined the network. Applies the
    /// update only when it provably touches nothing but the joined node's
    /// level neighborhood; otherwise marks the table stale and reports
    /// NeedsFullRefresh.
    UpdateResult on_node_joined(const GridNetwork& net, NodeId id);

    /// Incremental removal. Sound only when the departed node discovered no
    /// one; otherwise the table is marked stale and NeedsFullRefresh returned.
    UpdateResult on_node_left(NodeId id);

    /// Level of `id` if recognized; absent for the root and unknown ids.
    std::optional<std::uint32_t> contains(NodeId id) const;

    NodeId root() const { return root_; }
    std::uint64_t epoch() const { return epoch_; }
    bool stale() const { return stale_; }
    std::size_t size() const { return levels_.size(); }
    const std::map<NodeId, std::uint32_t>& levels() const { return levels_; }
    const std::map<NodeId, std::set<NodeId>>& discoverers() const {
        return discovered_via_;
    }
    const BinomialHeap& heap() const { return heap_; }
    std::optional<std::uint32_t> max_depth() const { return max_depth_; }

    /// Nearest live member of the table, as a (level, id) key.
    HeapKey nearest() const { return heap_.minimum(); }

    /// Golden-test dump: lines `id level discoverers=<sorted ids>`,
    /// sorted by (level, id).
    std::string dump() const;

private:
    RecognitionTable() = default;
    void rebuild(const GridNetwork& net);

    NodeId root_ = 0;
    BinomialHeap heap_;
    std::map<NodeId, std::uint32_t> levels_;
    std::map<NodeId, std::set<NodeId>> discovered_via_;
    std::uint64_t epoch_ = 0;
    bool stale_ = false;
    std::optional<std::uint32_t> max_depth_;
};

/// The live root that recognizes `failed` at minimal level; ties break toward
/// the smaller root id. Throws NoSupervisorError when no live table holds it.
NodeId nearest_supervisor(const std::vector<const RecognitionTable*>& tables,
                          NodeId failed,
                          const std::function<bool(NodeId)>& alive);

}  // namespace gridrec

#endif
