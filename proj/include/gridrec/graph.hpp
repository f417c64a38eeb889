#ifndef GRIDREC_GRAPH_HPP
#define GRIDREC_GRAPH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridrec/binomial_heap.hpp"  // NodeId

namespace gridrec {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateNodeError : GraphError {
    explicit DuplicateNodeError(NodeId id)
        : GraphError("node already present: " + std::to_string(id)) {}
};

struct UnknownNodeError : GraphError {
    explicit UnknownNodeError(NodeId id)
        : GraphError("unknown node: " + std::to_string(id)) {}
};

struct SelfLoopError : GraphError {
    explicit SelfLoopError(NodeId id)
        : GraphError("self loop on node: " + std::to_string(id)) {}
};

struct DuplicateEdgeError : GraphError {
    DuplicateEdgeError(NodeId u, NodeId v)
        : GraphError("edge already present: " + std::to_string(u) + "-" +
                     std::to_string(v)) {}
};

struct UnknownEdgeError : GraphError {
    UnknownEdgeError(NodeId u, NodeId v)
        : GraphError("unknown edge: " + std::to_string(u) + "-" +
                     std::to_string(v)) {}
};

struct EdgeListParseError : GraphError {
    EdgeListParseError(std::size_t line, const std::string& what)
        : GraphError("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Undirected simple graph of grid nodes. Adjacency is kept symmetric;
/// no self-loops, no parallel edges.
class GridNetwork {
public:
    void add_node(NodeId id);
    void remove_node(NodeId id);
    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);

    bool has_node(NodeId id) const { return adj_.count(id) != 0; }
    bool has_edge(NodeId u, NodeId v) const;
    const std::set<NodeId>& neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return neighbors(id).size(); }

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }
    std::vector<NodeId> node_ids() const;
    const std::map<NodeId, std::set<NodeId>>& adjacency() const { return adj_; }

    friend bool operator==(const GridNetwork&, const GridNetwork&) = default;

private:
    std::map<NodeId, std::set<NodeId>> adj_;
    std::size_t edges_ = 0;
};

/// The six-node grid of the worked recognition example: cycle
/// 1-2-3-6-5-4-1, every degree 2.
GridNetwork figure2_network();

/// Connected random graph: uniform-attachment spanning tree over ids 1..n
/// plus floor(extra_edge_fraction * n) distinct extra edges. Deterministic
/// for a given (n, fraction, seed).
GridNetwork random_connected(std::size_t n, double extra_edge_fraction,
                             std::uint64_t seed);

/// Edge-list text: UTF-8 lines `u v`, `#` comments. Throws EdgeListParseError.
GridNetwork load_edgelist(const std::string& text);

/// Inverse of load_edgelist: one line per edge, u < v, sorted.
std::string save_edgelist(const GridNetwork& net);

bool is_connected(const GridNetwork& net);

}  // namespace gridrec

#endif
