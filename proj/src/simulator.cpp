#include "gridrec/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <queue>
#include <random>
#include <sstream>

namespace gridrec {

std::string method_name(Method m) {
    return m == Method::HeapTable ? "heap_table" : "flooding_baseline";
}

Method parse_method(const std::string& name) {
    if (name == "heap_table") {
        return Method::HeapTable;
    }
    if (name == "flooding_baseline") {
        return Method::FloodingBaseline;
    }
    throw ConfigError("unknown method: " + name);
}

void validate_config(const SimConfig& config) {
    if (config.node_count < 1) {
        throw ConfigError("node_count must be >= 1");
    }
    if (config.ticks < 1) {
        throw ConfigError("ticks must be >= 1");
    }
    if (config.repair_window < 1) {
        throw ConfigError("repair_window must be >= 1");
    }
    if (config.failure_rate < 0.0 || config.failure_rate > 1.0) {
        throw ConfigError("failure_rate must be in [0,1]");
    }
    if (config.self_repair_prob < 0.0 || config.self_repair_prob > 1.0) {
        throw ConfigError("self_repair_prob must be in [0,1]");
    }
    if (config.extra_edge_fraction < 0.0) {
        throw ConfigError("extra_edge_fraction must be >= 0");
    }
}

std::string Event::format() const {
    std::ostringstream out;
    out << "tick=" << tick << " node=" << node << " event=" << name
        << " detail=" << detail;
    return out.str();
}

NodeAgent::NodeAgent(NodeId id, std::vector<NodeId> neighbor_ids)
    : id_(id), neighbor_ids_(std::move(neighbor_ids)) {
    for (NodeId v : neighbor_ids_) {
        last_heard_[v] = -1;  // assume everyone was alive just before tick 0
    }
}

std::vector<Action> NodeAgent::step(std::uint64_t tick,
                                    const std::vector<Observation>& delivered) {
    if (state_ != AgentState::Healthy) {
        return {};
    }
    for (const Observation& obs : delivered) {
        auto it = last_heard_.find(obs.from);
        if (it != last_heard_.end()) {
            it->second = static_cast<std::int64_t>(tick);
        }
    }
    std::vector<Action> actions;
    actions.reserve(neighbor_ids_.size());
    for (NodeId v : neighbor_ids_) {
        actions.push_back({ActionKind::Heartbeat, v});
        if (static_cast<std::int64_t>(tick) - last_heard_.at(v) >= kMissThreshold) {
            actions.push_back({ActionKind::ReportFailure, v});
        }
    }
    return actions;
}

namespace {

struct Failure {
    NodeId node = 0;
    std::uint64_t fail_tick = 0;
    bool self_repair = false;
    bool dispatched = false;
    std::optional<std::uint64_t> detect_tick;
    std::optional<std::uint64_t> scheduled_heal;
    std::optional<std::uint64_t> heal_tick;
};

struct FloodOutcome {
    std::uint64_t messages = 0;
    std::uint64_t depth = 0;
    std::size_t visited = 0;
};

// Breadth flood over currently-healthy nodes: every reached node forwards
// once to all neighbors, then one reply flows back per node.
FloodOutcome flood_from(const GridNetwork& net, NodeId origin,
                        const std::map<NodeId, NodeAgent>& agents) {
    FloodOutcome out;
    std::map<NodeId, std::uint64_t> dist{{origin, 0}};
    std::queue<NodeId> frontier;
    frontier.push(origin);
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop();
        out.messages += net.degree(u);  // forward on every incident edge
        out.depth = std::max(out.depth, dist.at(u));
        for (NodeId v : net.neighbors(u)) {
            if (!dist.count(v) && agents.at(v).up()) {
                dist.emplace(v, dist.at(u) + 1);
                frontier.push(v);
            }
        }
    }
    out.visited = dist.size();
    out.messages += out.visited - 1;  // replies
    return out;
}

}  // namespace

SimResult simulate(const SimConfig& config, const GridNetwork& net,
                   bool keep_log) {
    validate_config(config);
    SimResult result;
    Metrics& metrics = result.metrics;
    auto log = [&](std::uint64_t tick, NodeId node, std::string name,
                   std::string detail) {
        if (keep_log) {
            result.events.push_back(
                {tick, node, std::move(name), std::move(detail)});
        }
    };

    std::vector<NodeId> ids = net.node_ids();
    std::map<NodeId, NodeAgent> agents;
    for (NodeId id : ids) {
        const auto& nbrs = net.neighbors(id);
        agents.emplace(id,
                       NodeAgent(id, std::vector<NodeId>(nbrs.begin(), nbrs.end())));
    }
    auto alive = [&](NodeId id) { return agents.at(id).up(); };

    // Recognition tables exist only under the heap method; the baseline
    // must rediscover everything at failure time.
    std::map<NodeId, RecognitionTable> tables;
    std::vector<const RecognitionTable*> table_ptrs;
    if (config.method == Method::HeapTable) {
        for (NodeId id : ids) {
            tables.emplace(id, RecognitionTable::build(net, id));
        }
        for (const auto& [id, table] : tables) {
            table_ptrs.push_back(&table);
        }
    }

    // Independent streams so both methods see identical draws per (tick, node).
    std::seed_seq failure_seq{config.seed, std::uint64_t{0x66a1}};
    std::seed_seq repair_seq{config.seed, std::uint64_t{0x52e9}};
    std::mt19937_64 failure_rng(failure_seq);
    std::mt19937_64 repair_rng(repair_seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::set<std::pair<std::uint64_t, NodeId>> scripted(
        config.scripted_failures.begin(), config.scripted_failures.end());

    std::vector<Failure> failures;
    std::map<NodeId, std::size_t> active;  // node -> open failure index
    std::map<NodeId, std::vector<Observation>> inbox;  // delivered this tick
    std::uint64_t detect_latency_sum = 0;
    std::uint64_t detect_count = 0;
    std::uint64_t repair_latency_sum = 0;
    std::uint64_t repair_count = 0;
    std::uint64_t invalid_reports = 0;

    for (std::uint64_t t = 0; t < config.ticks; ++t) {
        // 1. Repairs that complete this tick.
        for (auto& [node, idx] : std::map<NodeId, std::size_t>(active)) {
            Failure& f = failures[idx];
            if (f.scheduled_heal && *f.scheduled_heal == t) {
                agents.at(node).set_state(AgentState::Healthy);
                f.heal_tick = t;
                if (f.self_repair) {
                    ++metrics.self_repairs;
                } else {
                    ++metrics.supervisor_repairs;
                }
                repair_latency_sum += t - f.fail_tick;
                ++repair_count;
                log(t, node, "heal",
                    f.self_repair ? "kind=self" : "kind=supervisor");
                active.erase(node);
            }
        }

        // 2. Failure injection, fixed node order. Draws happen for every node
        //    so the streams stay aligned across methods.
        for (NodeId id : ids) {
            double p = unit(failure_rng);
            bool coin = unit(repair_rng) < config.self_repair_prob;
            bool hit = p < config.failure_rate || scripted.count({t, id});
            if (!hit || !agents.at(id).up()) {
                continue;
            }
            Failure f;
            f.node = id;
            f.fail_tick = t;
            f.self_repair = coin;
            if (coin) {
                f.scheduled_heal = t + config.repair_window;
                agents.at(id).set_state(AgentState::SelfRepairing);
            } else {
                agents.at(id).set_state(AgentState::Failed);
            }
            active.emplace(id, failures.size());
            failures.push_back(f);
            ++metrics.failures_injected;
            log(t, id, "fail", coin ? "kind=self" : "kind=supervisor");
        }

        // 3. Control loops: deliver last tick's heartbeats, collect actions.
        std::map<NodeId, std::vector<Observation>> next_inbox;
        std::map<NodeId, std::vector<NodeId>> reports;  // subject -> reporters
        for (NodeId id : ids) {
            auto delivered = inbox.find(id);
            std::vector<Action> actions = agents.at(id).step(
                t, delivered == inbox.end() ? std::vector<Observation>{}
                                            : delivered->second);
            for (const Action& a : actions) {
                if (a.kind == ActionKind::Heartbeat) {
                    next_inbox[a.target].push_back({id});
                    ++metrics.total_messages;
                } else {
                    reports[a.target].push_back(id);
                }
            }
        }
        inbox = std::move(next_inbox);

        // 4. Detection and dispatch.
        for (auto& [subject, reporters] : reports) {
            auto idx = active.find(subject);
            if (idx == active.end() || agents.at(subject).up()) {
                ++invalid_reports;  // stale report about a healed node
                continue;
            }
            Failure& f = failures[idx->second];
            if (f.dispatched || f.self_repair) {
                if (!f.detect_tick && f.self_repair) {
                    f.detect_tick = t;
                    detect_latency_sum += t - f.fail_tick;
                    ++detect_count;
                    log(t, subject, "detect",
                        "by=" + std::to_string(*std::min_element(
                                    reporters.begin(), reporters.end())) +
                            ",resolution=self");
                }
                continue;
            }
            NodeId detector = *std::min_element(reporters.begin(), reporters.end());
            if (!f.detect_tick) {
                f.detect_tick = t;
                detect_latency_sum += t - f.fail_tick;
                ++detect_count;
                log(t, subject, "detect", "by=" + std::to_string(detector));
            }
            if (config.method == Method::HeapTable) {
                NodeId supervisor;
                try {
                    supervisor = nearest_supervisor(table_ptrs, subject, alive);
                } catch (const NoSupervisorError&) {
                    continue;  // retry on a later tick
                }
                std::uint32_t dist = *tables.at(supervisor).contains(subject);
                metrics.total_messages += 2ull * dist;
                f.dispatched = true;
                f.scheduled_heal = t + 1 + config.repair_window;
                log(t, subject, "dispatch",
                    "supervisor=" + std::to_string(supervisor) +
                        ",dist=" + std::to_string(dist));
            } else {
                FloodOutcome flood = flood_from(net, detector, agents);
                metrics.total_messages += flood.messages + 2;  // + repair exchange
                f.dispatched = true;
                f.scheduled_heal = t + 2 * flood.depth + 1 + config.repair_window;
                log(t, subject, "flood",
                    "visited=" + std::to_string(flood.visited) +
                        ",depth=" + std::to_string(flood.depth));
                log(t, subject, "dispatch",
                    "supervisor=" + std::to_string(detector) + ",dist=1");
            }
        }

        // 5. Scheduled table refresh (heap method only).
        if (config.method == Method::HeapTable && config.refresh_interval > 0 &&
            t > 0 && t % config.refresh_interval == 0) {
            std::uint64_t refreshed = 0;
            for (NodeId id : ids) {
                if (agents.at(id).up()) {
                    tables.at(id).refresh(net);
                    metrics.total_messages += net.degree(id);
                    ++refreshed;
                }
            }
            log(t, 0, "refresh", "nodes=" + std::to_string(refreshed));
        }
    }

    for (const Failure& f : failures) {
        if (!f.heal_tick) {
            ++metrics.unrepaired;
        }
    }
    if (detect_count > 0) {
        metrics.mean_detection_latency =
            static_cast<double>(detect_latency_sum) / detect_count;
    }
    if (repair_count > 0) {
        metrics.mean_repair_latency =
            static_cast<double>(repair_latency_sum) / repair_count;
    }
    (void)invalid_reports;
    return result;
}

Metrics run(const SimConfig& config) {
    validate_config(config);
    GridNetwork net = random_connected(config.node_count,
                                       config.extra_edge_fraction, config.seed);
    return simulate(config, net).metrics;
}

Metrics run_baseline(SimConfig config) {
    config.method = Method::FloodingBaseline;
    return run(config);
}

namespace {

std::string format_latency(const std::optional<double>& value) {
    if (!value) {
        return "n/a";
    }
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << *value;
    return out.str();
}

void csv_row(std::ostringstream& out, std::uint64_t seed, Method method,
             const Metrics& m) {
    out << seed << "," << method_name(method) << "," << m.failures_injected
        << "," << m.self_repairs << "," << m.supervisor_repairs << ","
        << m.unrepaired << "," << m.total_messages << ","
        << format_latency(m.mean_detection_latency) << ","
        << format_latency(m.mean_repair_latency) << "\n";
}

}  // namespace

std::string metrics_csv_header() {
    return "seed,method,failures,self_repairs,supervisor_repairs,unrepaired,"
           "messages,mean_detect,mean_repair\n";
}

std::string metrics_csv_row(std::uint64_t seed, Method method, const Metrics& m) {
    std::ostringstream out;
    csv_row(out, seed, method, m);
    return out.str();
}

std::string ComparisonReport::to_csv() const {
    std::ostringstream out;
    out << metrics_csv_header();
    for (const SeedOutcome& o : outcomes) {
        csv_row(out, o.seed, Method::HeapTable, o.heap_table);
        csv_row(out, o.seed, Method::FloodingBaseline, o.flooding);
    }
    return out.str();
}

std::string ComparisonReport::summary() const {
    std::ostringstream out;
    out << "seeds=" << outcomes.size() << " message_wins=" << message_wins;
    if (latency_compared > 0) {
        out << " latency_wins=" << latency_wins << "/" << latency_compared;
    } else {
        out << " latency_wins=n/a";
    }
    return out.str();
}

ComparisonReport compare(const SimConfig& config,
                         const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) {
        throw ConfigError("compare requires at least one seed");
    }
    validate_config(config);
    ComparisonReport report;
    for (std::uint64_t seed : seeds) {
        SimConfig c = config;
        c.seed = seed;
        SeedOutcome outcome;
        outcome.seed = seed;
        c.method = Method::HeapTable;
        outcome.heap_table = run(c);
        c.method = Method::FloodingBaseline;
        outcome.flooding = run(c);
        if (outcome.heap_table.total_messages < outcome.flooding.total_messages) {
            ++report.message_wins;
        }
        if (outcome.heap_table.mean_repair_latency &&
            outcome.flooding.mean_repair_latency) {
            ++report.latency_compared;
            if (*outcome.heap_table.mean_repair_latency <
                *outcome.flooding.mean_repair_latency) {
                ++report.latency_wins;
            }
        }
        report.outcomes.push_back(std::move(outcome));
    }
    return report;
}

}  // namespace gridrec
