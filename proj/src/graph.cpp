#include "gridrec/graph.hpp"

#include <queue>
#include <random>
#include <sstream>

namespace gridrec {

void GridNetwork::add_node(NodeId id) {
    if (adj_.count(id)) {
        throw DuplicateNodeError(id);
    }
    adj_.emplace(id, std::set<NodeId>{});
}

void GridNetwork::remove_node(NodeId id) {
    auto it = adj_.find(id);
    if (it == adj_.end()) {
        throw UnknownNodeError(id);
    }
    for (NodeId v : it->second) {
        adj_.at(v).erase(id);
        --edges_;
    }
    adj_.erase(it);
}

void GridNetwork::add_edge(NodeId u, NodeId v) {
    if (u == v) {
        throw SelfLoopError(u);
    }
    auto ui = adj_.find(u);
    if (ui == adj_.end()) {
        throw UnknownNodeError(u);
    }
    auto vi = adj_.find(v);
    if (vi == adj_.end()) {
        throw UnknownNodeError(v);
    }
    if (ui->second.count(v)) {
        throw DuplicateEdgeError(u, v);
    }
    ui->second.insert(v);
    vi->second.insert(u);
    ++edges_;
}

void GridNetwork::remove_edge(NodeId u, NodeId v) {
    auto ui = adj_.find(u);
    if (ui == adj_.end()) {
        throw UnknownNodeError(u);
    }
    auto vi = adj_.find(v);
    if (vi == adj_.end()) {
        throw UnknownNodeError(v);
    }
    if (!ui->second.count(v)) {
        throw UnknownEdgeError(u, v);
    }
    ui->second.erase(v);
    vi->second.erase(u);
    --edges_;
}

bool GridNetwork::has_edge(NodeId u, NodeId v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) != 0;
}

const std::set<NodeId>& GridNetwork::neighbors(NodeId id) const {
    auto it = adj_.find(id);
    if (it == adj_.end()) {
        throw UnknownNodeError(id);
    }
    return it->second;
}

std::vector<NodeId> GridNetwork::node_ids() const {
    std::vector<NodeId> ids;
    ids.reserve(adj_.size());
    for (const auto& [id, nbrs] : adj_) {
        ids.push_back(id);
    }
    return ids;
}

GridNetwork figure2_network() {
    GridNetwork net;
    for (NodeId id = 1; id <= 6; ++id) {
        net.add_node(id);
    }
    net.add_edge(1, 2);
    net.add_edge(2, 3);
    net.add_edge(1, 4);
    net.add_edge(4, 5);
    net.add_edge(5, 6);
    net.add_edge(3, 6);
    return net;
}

GridNetwork random_connected(std::size_t n, double extra_edge_fraction,
                             std::uint64_t seed) {
    if (n < 1) {
        throw GraphError("random_connected requires n >= 1");
    }
    if (extra_edge_fraction < 0.0) {
        throw GraphError("extra_edge_fraction must be >= 0");
    }
    GridNetwork net;
    for (NodeId id = 1; id <= n; ++id) {
        net.add_node(id);
    }
    std::mt19937_64 rng(seed);
    for (NodeId id = 2; id <= n; ++id) {
        std::uniform_int_distribution<NodeId> pick(1, id - 1);
        net.add_edge(id, pick(rng));
    }
    std::size_t max_edges = n * (n - 1) / 2;
    std::size_t extra = static_cast<std::size_t>(extra_edge_fraction *
                                                 static_cast<double>(n));
    if (net.edge_count() + extra > max_edges) {
        extra = max_edges - net.edge_count();
    }
    std::uniform_int_distribution<NodeId> any(1, n);
    std::size_t added = 0;
    while (added < extra) {
        NodeId u = any(rng);
        NodeId v = any(rng);
        if (u != v && !net.has_edge(u, v)) {
            net.add_edge(u, v);
            ++added;
        }
    }
    return net;
}

GridNetwork load_edgelist(const std::string& text) {
    GridNetwork net;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream fields(line);
        NodeId u = 0;
        NodeId v = 0;
        if (!(fields >> u)) {
            continue;  // blank or comment-only
        }
        if (!(fields >> v)) {
            throw EdgeListParseError(lineno, "expected two node ids");
        }
        std::string rest;
        if (fields >> rest) {
            throw EdgeListParseError(lineno, "trailing content: " + rest);
        }
        if (u == v) {
            throw EdgeListParseError(lineno, "self loop on node " +
                                                 std::to_string(u));
        }
        if (!net.has_node(u)) {
            net.add_node(u);
        }
        if (!net.has_node(v)) {
            net.add_node(v);
        }
        if (net.has_edge(u, v)) {
            throw EdgeListParseError(lineno, "duplicate edge");
        }
        net.add_edge(u, v);
    }
    return net;
}

std::string save_edgelist(const GridNetwork& net) {
    // adjacency() iterates ids ascending, so emitting each edge at its
    // smaller endpoint yields (u, v)-sorted lines.
    std::ostringstream out;
    for (const auto& [u, nbrs] : net.adjacency()) {
        for (NodeId v : nbrs) {
            if (u < v) {
                out << u << " " << v << "\n";
            }
        }
    }
    return out.str();
}

bool is_connected(const GridNetwork& net) {
    if (net.node_count() == 0) {
        return true;
    }
    NodeId start = net.adjacency().begin()->first;
    std::set<NodeId> seen{start};
    std::queue<NodeId> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : net.neighbors(u)) {
            if (seen.insert(v).second) {
                frontier.push(v);
            }
        }
    }
    return seen.size() == net.node_count();
}

}  // namespace gridrec
