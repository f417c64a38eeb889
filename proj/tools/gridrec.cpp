#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gridrec/advisor.hpp"
#include "gridrec/binomial_heap.hpp"
#include "gridrec/graph.hpp"
#include "gridrec/recognition.hpp"
#include "gridrec/scenario.hpp"
#include "gridrec/simulator.hpp"

namespace {

using namespace gridrec;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

GridNetwork load_topology(bool figure2, const std::string& path) {
    if (figure2) {
        return figure2_network();
    }
    if (path.empty()) {
        throw ConfigError("either --figure2 or --topology is required");
    }
    return load_edgelist(read_file(path));
}

int heap_selftest(std::size_t op_count, std::uint64_t seed,
                  const std::string& corrupt) {
    if (!corrupt.empty()) {
        BinomialHeap heap;
        for (NodeId id = 1; id <= 3; ++id) {
            heap.insert({static_cast<std::uint32_t>(id), id});
        }
        bool planted = corrupt == "order"
                           ? HeapFaultInjector::plant_order_violation(heap)
                           : HeapFaultInjector::plant_degree_collision(heap);
        if (!planted) {
            std::cerr << "could not plant defect\n";
            return kExitUsage;
        }
        ValidationReport report = heap.validate();
        for (const std::string& v : report.violations) {
            std::cout << "violation: " << v << "\n";
        }
        std::cout << "ops=3 violations=" << report.violations.size() << "\n";
        return report.ok() ? kExitOk : kExitViolation;
    }

    BinomialHeap heap;
    std::map<NodeId, HeapKey> oracle;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> op_pick(0, 9);
    std::uniform_int_distribution<std::uint32_t> dist_pick(1, 50);
    std::uniform_int_distribution<NodeId> id_pick(1, 512);
    std::size_t violations = 0;
    std::size_t mismatches = 0;

    auto oracle_min = [&]() {
        const HeapKey* best = nullptr;
        for (const auto& [id, key] : oracle) {
            if (!best || key < *best) {
                best = &key;
            }
        }
        return *best;
    };

    for (std::size_t op = 0; op < op_count; ++op) {
        int kind = op_pick(rng);
        if (kind < 6 || oracle.empty()) {
            HeapKey key{dist_pick(rng), id_pick(rng)};
            if (oracle.count(key.id)) {
                continue;
            }
            heap.insert(key);
            oracle.emplace(key.id, key);
        } else if (kind < 8) {
            HeapKey expect = oracle_min();
            HeapKey got = heap.extract_min();
            if (got != expect) {
                ++mismatches;
            }
            oracle.erase(got.id);
        } else {
            auto victim = oracle.begin();
            std::advance(victim, id_pick(rng) % oracle.size());
            heap.erase(EntryHandle{victim->first});
            oracle.erase(victim);
        }
        ValidationReport report = heap.validate();
        violations += report.violations.size();
        if (!oracle.empty() && heap.minimum() != oracle_min()) {
            ++mismatches;
        }
    }
    std::cout << "ops=" << op_count << " violations=" << violations
              << " oracle_mismatches=" << mismatches << "\n";
    return violations == 0 && mismatches == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binomial-heap self-recognition toolkit for grid networks"};
    app.require_subcommand(1);

    // heap-selftest
    auto* selftest = app.add_subcommand(
        "heap-selftest", "Random-operation invariant suite for the heap");
    std::size_t st_size = 1000;
    std::uint64_t st_seed = 7;
    std::string st_corrupt;
    selftest->add_option("--size", st_size, "Number of random operations");
    selftest->add_option("--seed", st_seed, "RNG seed");
    selftest->add_option("--corrupt", st_corrupt,
                         "Plant a defect: order | degree")
        ->check(CLI::IsMember({"order", "degree"}));

    // recognize
    auto* recognize = app.add_subcommand(
        "recognize", "Print one node's recognition table");
    bool rc_figure2 = false;
    std::string rc_topology;
    NodeId rc_root = 0;
    recognize->add_flag("--figure2", rc_figure2, "Use the built-in 6-node grid");
    recognize->add_option("--topology", rc_topology, "Edge-list file");
    recognize->add_option("root,--root", rc_root, "Table root node")->required();

    // gen-topology
    auto* gen = app.add_subcommand("gen-topology",
                                   "Emit a random connected edge list");
    std::size_t gt_nodes = 100;
    double gt_extra = 0.5;
    std::uint64_t gt_seed = 1;
    std::string gt_out;
    gen->add_option("--nodes", gt_nodes, "Node count");
    gen->add_option("--extra-edges", gt_extra, "Extra edge fraction");
    gen->add_option("--seed", gt_seed, "RNG seed");
    gen->add_option("-o,--output", gt_out, "Output file (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run one failure simulation");
    std::string sm_scenario;
    std::string sm_dump_config;
    sim->add_option("--scenario", sm_scenario, "Scenario file");
    sim->add_option("--dump-config", sm_dump_config,
                    "Write the effective scenario back out");

    // compare
    auto* cmp = app.add_subcommand(
        "compare", "Paired heap-vs-flooding runs across seeds");
    std::string cp_scenario;
    cmp->add_option("--scenario", cp_scenario, "Scenario file")->required();

    // advise
    auto* adv = app.add_subcommand("advise", "Route a query for the best answer");
    bool av_figure2 = false;
    std::string av_topology;
    std::string av_profiles;
    NodeId av_entry = 0;
    std::string av_topic;
    double av_threshold = 0.7;
    adv->add_flag("--figure2", av_figure2, "Use the built-in 6-node grid");
    adv->add_option("--topology", av_topology, "Edge-list file");
    adv->add_option("--profiles", av_profiles, "Competence profile file")
        ->required();
    adv->add_option("--entry", av_entry, "Entry node")->required();
    adv->add_option("--topic", av_topic, "Query topic")->required();
    adv->add_option("--threshold", av_threshold, "Answer threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (selftest->parsed()) {
            return heap_selftest(st_size, st_seed, st_corrupt);
        }
        if (recognize->parsed()) {
            GridNetwork net = load_topology(rc_figure2, rc_topology);
            if (!net.has_node(rc_root)) {
                std::cerr << "unknown root node: " << rc_root << "\n";
                return kExitUsage;
            }
            std::cout << RecognitionTable::build(net, rc_root).dump();
            return kExitOk;
        }
        if (gen->parsed()) {
            std::string text = save_edgelist(
                random_connected(gt_nodes, gt_extra, gt_seed));
            if (gt_out.empty()) {
                std::cout << text;
            } else {
                write_file(gt_out, text);
            }
            return kExitOk;
        }
        if (sim->parsed()) {
            Scenario scenario = sm_scenario.empty()
                                    ? Scenario{}
                                    : Scenario::parse(read_file(sm_scenario));
            if (!sm_dump_config.empty()) {
                write_file(sm_dump_config, scenario.dump());
            }
            GridNetwork net =
                scenario.topology_path
                    ? load_edgelist(read_file(*scenario.topology_path))
                    : random_connected(scenario.sim.node_count,
                                       scenario.sim.extra_edge_fraction,
                                       scenario.sim.seed);
            bool want_log = scenario.log_out.has_value();
            SimResult result = simulate(scenario.sim, net, want_log);
            const Metrics& m = result.metrics;
            std::cout << "method=" << method_name(scenario.sim.method)
                      << " failures=" << m.failures_injected
                      << " self_repairs=" << m.self_repairs
                      << " supervisor_repairs=" << m.supervisor_repairs
                      << " unrepaired=" << m.unrepaired
                      << " messages=" << m.total_messages << "\n";
            if (scenario.log_out) {
                std::ostringstream log;
                for (const Event& e : result.events) {
                    log << e.format() << "\n";
                }
                write_file(*scenario.log_out, log.str());
            }
            if (scenario.csv_out) {
                write_file(*scenario.csv_out,
                           metrics_csv_header() +
                               metrics_csv_row(scenario.sim.seed,
                                               scenario.sim.method, m));
            }
            return kExitOk;
        }
        if (cmp->parsed()) {
            Scenario scenario = Scenario::parse(read_file(cp_scenario));
            ComparisonReport report =
                compare(scenario.sim, scenario.effective_seeds());
            std::string csv_path = scenario.csv_out.value_or("compare.csv");
            write_file(csv_path, report.to_csv());
            std::cout << report.summary() << " csv=" << csv_path << "\n";
            return kExitOk;
        }
        if (adv->parsed()) {
            GridNetwork net = load_topology(av_figure2, av_topology);
            if (!net.has_node(av_entry)) {
                std::cerr << "unknown entry node: " << av_entry << "\n";
                return kExitUsage;
            }
            KnowledgeProfiles profiles =
                KnowledgeProfiles::parse(read_file(av_profiles));
            TableSet tables = build_tables(net);
            AdvisorConfig config{av_threshold};
            QueryState result =
                answer(av_entry, av_topic, tables, profiles, config);
            std::cout << format_trace(result);
            return result.no_answer ? kExitViolation : kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EdgeListParseError& e) {
        std::cerr << "topology parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ProfileParseError& e) {
        std::cerr << "profile parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
