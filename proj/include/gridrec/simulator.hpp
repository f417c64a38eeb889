#ifndef GRIDREC_SIMULATOR_HPP
#define GRIDREC_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridrec/graph.hpp"
#include "gridrec/recognition.hpp"

namespace gridrec {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { HeapTable, FloodingBaseline };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct SimConfig {
    std::size_t node_count = 100;
    double extra_edge_fraction = 0.5;
    std::uint64_t seed = 1;
    std::size_t ticks = 500;
    double failure_rate = 0.0;       // per node, per tick
    double self_repair_prob = 0.0;   // chance a failure heals on its own
    std::size_t repair_window = 5;   // ticks a repair takes once underway
    std::size_t refresh_interval = 10;
    Method method = Method::HeapTable;
    /// Deterministic extra failures (tick, node); mostly for tests.
    std::vector<std::pair<std::uint64_t, NodeId>> scripted_failures;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws ConfigError on out-of-range fields.
void validate_config(const SimConfig& config);

struct Metrics {
    std::uint64_t failures_injected = 0;
    std::uint64_t self_repairs = 0;
    std::uint64_t supervisor_repairs = 0;
    std::uint64_t unrepaired = 0;
    std::uint64_t total_messages = 0;
    std::optional<double> mean_detection_latency;
    std::optional<double> mean_repair_latency;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct Event {
    std::uint64_t tick = 0;
    NodeId node = 0;
    std::string name;
    std::string detail;

    std::string format() const;  // tick=<t> node=<id> event=<name> detail=<...>
};

struct SimResult {
    Metrics metrics;
    std::vector<Event> events;
};

enum class AgentState { Healthy, Failed, SelfRepairing, SupervisorRepairing };

struct Observation {
    NodeId from = 0;  // heartbeat sender
};

enum class ActionKind { Heartbeat, ReportFailure };

struct Action {
    ActionKind kind;
    NodeId target = 0;
};

/// One grid node's control loop: monitor neighbor heartbeats, compare
/// against the liveness expectation, decide, act. Down agents are inert.
class NodeAgent {
public:
    NodeAgent(NodeId id, std::vector<NodeId> neighbor_ids);

    NodeId id() const { return id_; }
    AgentState state() const { return state_; }
    void set_state(AgentState s) { state_ = s; }
    bool up() const { return state_ == AgentState::Healthy; }

    /// Pure function of (state, observations, tick): absorbs delivered
    /// heartbeats, emits its own, and reports neighbors silent for the miss
    /// threshold. Returns no actions while down.
    std::vector<Action> step(std::uint64_t tick,
                             const std::vector<Observation>& delivered);

private:
    static constexpr std::int64_t kMissThreshold = 2;

    NodeId id_;
    AgentState state_ = AgentState::Healthy;
    std::vector<NodeId> neighbor_ids_;
    std::map<NodeId, std::int64_t> last_heard_;
};

/// Runs one deterministic simulation over an explicit topology.
SimResult simulate(const SimConfig& config, const GridNetwork& net,
                   bool keep_log = false);

/// Convenience: topology generated from (node_count, extra_edge_fraction, seed).
Metrics run(const SimConfig& config);

/// As run(), with the method forced to the flooding baseline.
Metrics run_baseline(SimConfig config);

struct SeedOutcome {
    std::uint64_t seed = 0;
    Metrics heap_table;
    Metrics flooding;
};

struct ComparisonReport {
    std::vector<SeedOutcome> outcomes;
    std::size_t message_wins = 0;     // heap strictly cheaper in messages
    std::size_t latency_wins = 0;     // heap strictly faster mean repair
    std::size_t latency_compared = 0; // seeds where both latencies exist

    std::string to_csv() const;
    std::string summary() const;
};

/// Paired runs of both methods over each seed.
ComparisonReport compare(const SimConfig& config,
                         const std::vector<std::uint64_t>& seeds);

/// Shared metrics CSV format.
std::string metrics_csv_header();
std::string metrics_csv_row(std::uint64_t seed, Method method, const Metrics& m);

}  // namespace gridrec

#endif
