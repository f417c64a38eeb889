#ifndef GRIDREC_SCENARIO_HPP
#define GRIDREC_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "gridrec/simulator.hpp"

namespace gridrec {

/// Experiment description: line-oriented `key = value`, `#` comments,
/// unknown keys rejected. Round-trips through dump()/parse().
struct Scenario {
    SimConfig sim;
    std::size_t seed_count = 30;  // compare seeds: seed .. seed+count-1
    std::vector<std::uint64_t> seeds;  // explicit list, overrides seed_count
    double answer_threshold = 0.7;
    std::optional<std::string> topology_path;
    std::optional<std::string> profiles_path;
    std::optional<std::string> csv_out;
    std::optional<std::string> log_out;

    std::vector<std::uint64_t> effective_seeds() const;

    static Scenario parse(const std::string& text);  // throws ConfigError
    std::string dump() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace gridrec

#endif
