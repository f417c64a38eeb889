#include "gridrec/scenario.hpp"

#include <cstdio>
#include <sstream>

namespace gridrec {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for key `" + key + "`: " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for key `" + key + "`: " + value);
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<std::uint64_t> Scenario::effective_seeds() const {
    if (!seeds.empty()) {
        return seeds;
    }
    std::vector<std::uint64_t> out;
    out.reserve(seed_count);
    for (std::size_t i = 0; i < seed_count; ++i) {
        out.push_back(sim.seed + i);
    }
    return out;
}

Scenario Scenario::parse(const std::string& text) {
    Scenario scenario;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected `key = value`");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "node_count") {
            scenario.sim.node_count = parse_u64(key, value);
        } else if (key == "extra_edge_fraction") {
            scenario.sim.extra_edge_fraction = parse_double(key, value);
        } else if (key == "seed") {
            scenario.sim.seed = parse_u64(key, value);
        } else if (key == "ticks") {
            scenario.sim.ticks = parse_u64(key, value);
        } else if (key == "failure_rate") {
            scenario.sim.failure_rate = parse_double(key, value);
        } else if (key == "self_repair_prob") {
            scenario.sim.self_repair_prob = parse_double(key, value);
        } else if (key == "repair_window") {
            scenario.sim.repair_window = parse_u64(key, value);
        } else if (key == "refresh_interval") {
            scenario.sim.refresh_interval = parse_u64(key, value);
        } else if (key == "method") {
            scenario.sim.method = parse_method(value);
        } else if (key == "seed_count") {
            scenario.seed_count = parse_u64(key, value);
        } else if (key == "seeds") {
            std::istringstream list(value);
            std::string item;
            scenario.seeds.clear();
            while (std::getline(list, item, ',')) {
                scenario.seeds.push_back(parse_u64(key, trim(item)));
            }
        } else if (key == "answer_threshold") {
            scenario.answer_threshold = parse_double(key, value);
        } else if (key == "topology") {
            scenario.topology_path = value;
        } else if (key == "profiles") {
            scenario.profiles_path = value;
        } else if (key == "csv_out") {
            scenario.csv_out = value;
        } else if (key == "log_out") {
            scenario.log_out = value;
        } else {
            throw ConfigError("unknown scenario key: " + key);
        }
    }
    validate_config(scenario.sim);
    return scenario;
}

std::string Scenario::dump() const {
    std::ostringstream out;
    out << "node_count = " << sim.node_count << "\n";
    out << "extra_edge_fraction = " << format_double(sim.extra_edge_fraction)
        << "\n";
    out << "seed = " << sim.seed << "\n";
    out << "ticks = " << sim.ticks << "\n";
    out << "failure_rate = " << format_double(sim.failure_rate) << "\n";
    out << "self_repair_prob = " << format_double(sim.self_repair_prob) << "\n";
    out << "repair_window = " << sim.repair_window << "\n";
    out << "refresh_interval = " << sim.refresh_interval << "\n";
    out << "method = " << method_name(sim.method) << "\n";
    out << "seed_count = " << seed_count << "\n";
    if (!seeds.empty()) {
        out << "seeds = ";
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            out << (i ? "," : "") << seeds[i];
        }
        out << "\n";
    }
    out << "answer_threshold = " << format_double(answer_threshold) << "\n";
    if (topology_path) {
        out << "topology = " << *topology_path << "\n";
    }
    if (profiles_path) {
        out << "profiles = " << *profiles_path << "\n";
    }
    if (csv_out) {
        out << "csv_out = " << *csv_out << "\n";
    }
    if (log_out) {
        out << "log_out = " << *log_out << "\n";
    }
    return out.str();
}

}  // namespace gridrec
