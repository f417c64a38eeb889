#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "gridrec/scenario.hpp"

using namespace gridrec;

TEST_CASE("parse reads keys, comments and blank lines") {
    Scenario s = Scenario::parse(
        "# experiment\n"
        "node_count = 64\n"
        "extra_edge_fraction = 0.25\n"
        "\n"
        "seed = 9\n"
        "ticks = 120\n"
        "failure_rate = 0.05   # per node per tick\n"
        "self_repair_prob = 0.5\n"
        "repair_window = 3\n"
        "refresh_interval = 20\n"
        "method = flooding_baseline\n"
        "seed_count = 4\n"
        "answer_threshold = 0.8\n"
        "csv_out = out.csv\n");
    CHECK(s.sim.node_count == 64);
    CHECK(s.sim.extra_edge_fraction == 0.25);
    CHECK(s.sim.seed == 9);
    CHECK(s.sim.ticks == 120);
    CHECK(s.sim.failure_rate == 0.05);
    CHECK(s.sim.self_repair_prob == 0.5);
    CHECK(s.sim.repair_window == 3);
    CHECK(s.sim.refresh_interval == 20);
    CHECK(s.sim.method == Method::FloodingBaseline);
    CHECK(s.seed_count == 4);
    CHECK(s.answer_threshold == 0.8);
    CHECK(s.csv_out == "out.csv");
    CHECK_FALSE(s.log_out.has_value());
}

TEST_CASE("defaults survive an empty scenario") {
    Scenario s = Scenario::parse("");
    CHECK(s == Scenario{});
    CHECK(s.effective_seeds().size() == 30);
    CHECK(s.effective_seeds().front() == 1);
    CHECK(s.effective_seeds().back() == 30);
}

TEST_CASE("an explicit seed list overrides seed_count") {
    Scenario s = Scenario::parse("seeds = 5, 9, 12\nseed_count = 2\n");
    CHECK(s.effective_seeds() == std::vector<std::uint64_t>{5, 9, 12});
}

TEST_CASE("unknown keys and malformed lines are rejected by name") {
    try {
        Scenario::parse("node_count = 10\nnode_cout = 11\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("node_cout") != std::string::npos);
    }
    CHECK_THROWS_AS(Scenario::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse("ticks = soon\n"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse("failure_rate = 0.1x\n"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse("method = gossip\n"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse("seeds = 1,,2\n"), ConfigError);
    // parsed values still go through simulation validation
    CHECK_THROWS_AS(Scenario::parse("failure_rate = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(Scenario::parse("node_count = 0\n"), ConfigError);
}

TEST_CASE("dump round-trips exactly, doubles included") {
    Scenario s;
    s.sim.node_count = 81;
    s.sim.extra_edge_fraction = 0.1;  // not exactly representable
    s.sim.seed = 77;
    s.sim.failure_rate = 1.0 / 3.0;
    s.sim.self_repair_prob = 0.30000000000000004;
    s.sim.method = Method::FloodingBaseline;
    s.seeds = {3, 1, 4};
    s.answer_threshold = 2.0 / 3.0;
    s.topology_path = "grid.edges";
    s.profiles_path = "skills.txt";
    s.log_out = "events.log";

    Scenario back = Scenario::parse(s.dump());
    CHECK(back == s);
    CHECK(Scenario::parse(back.dump()) == back);

    Scenario plain = Scenario::parse(Scenario{}.dump());
    CHECK(plain == Scenario{});
}
