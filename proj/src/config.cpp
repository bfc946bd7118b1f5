#include "aoisim/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aoisim/format.hpp"

namespace aoisim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': not a number: '" + value + "'");
    return x;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long x = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': not an unsigned integer: '" + value + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + value + "'");
}

Architecture parse_architecture(const std::string& value) {
    if (value == "mixed") return Architecture::MixedMemory;
    if (value == "nvm") return Architecture::NvmOnly;
    if (value == "vm") return Architecture::VmOnly;
    throw ConfigError("unknown architecture '" + value + "' (mixed|nvm|vm)");
}

ScenarioParams preset_by_name(const std::string& name) {
    if (name == "RF1") return ScenarioParams::rf1();
    if (name == "RF2") return ScenarioParams::rf2();
    throw ConfigError("unknown preset '" + name + "' (RF1|RF2)");
}

const std::vector<std::pair<std::string, std::string>>& section(
    const ConfigFile& cfg, const std::string& name) {
    const auto it = cfg.sections.find(name);
    if (it == cfg.sections.end())
        throw ConfigError("missing [" + name + "] section");
    return it->second;
}

// `single:<h>` or `split:<k_alpha>,<k_beta>,<h_alpha>,<h_beta>`
CheckpointPolicy parse_policy_entry(const std::string& entry) {
    const auto colon = entry.find(':');
    const std::string kind = colon == std::string::npos ? entry : entry.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : entry.substr(colon + 1);
    if (kind == "single") return CheckpointPolicy::single(parse_number("policies", args));
    if (kind == "split") {
        const auto parts = split(args, ',');
        if (parts.size() != 4)
            throw ConfigError("split policy needs 4 values: '" + entry + "'");
        return CheckpointPolicy::split(parse_number("policies", parts[0]),
                                       parse_number("policies", parts[1]),
                                       parse_number("policies", parts[2]),
                                       parse_number("policies", parts[3]));
    }
    throw ConfigError("unknown policy kind '" + kind + "' (single|split)");
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream is(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": malformed section header");
            current = trim(t.substr(1, t.size() - 2));
            if (current.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
            cfg.sections[current];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": key outside of any section");
        cfg.sections[current].emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

ScenarioParams scenario_from(const ConfigFile& cfg) {
    const auto& kvs = section(cfg, "scenario");
    ScenarioParams p;
    // Preset applies first, explicit keys override it.
    for (const auto& [k, v] : kvs)
        if (k == "preset") p = preset_by_name(v);
    for (const auto& [k, v] : kvs) {
        if (k == "preset") continue;
        if (k == "mean_processing") p.mean_processing = parse_number(k, v);
        else if (k == "mean_offtime") p.mean_offtime = parse_number(k, v);
        else if (k == "mean_failures") p.mean_failures = parse_number(k, v);
        else if (k == "mean_idle") p.mean_idle = parse_number(k, v);
        else if (k == "checkpoint_cost") p.checkpoint_cost = parse_number(k, v);
        else if (k == "restore_cost") p.restore_cost = parse_number(k, v);
        else if (k == "failure_count_dist") {
            if (v == "poisson") p.failure_count_dist = FailureCountDist::Poisson;
            else if (v == "fixed") p.failure_count_dist = FailureCountDist::FixedCount;
            else throw ConfigError("key '" + k + "': expected poisson or fixed");
        } else if (k == "offtime_dist" || k == "idle_dist") {
            TimeDist d;
            if (v == "deterministic") d = TimeDist::Deterministic;
            else if (v == "exponential") d = TimeDist::Exponential;
            else throw ConfigError("key '" + k + "': expected deterministic or exponential");
            (k == "offtime_dist" ? p.offtime_dist : p.idle_dist) = d;
        } else {
            throw ConfigError("unknown key '" + k + "' in [scenario]");
        }
    }
    return p;
}

CheckpointPolicy policy_from(const ConfigFile& cfg) {
    const auto& kvs = section(cfg, "policy");
    std::string kind = "single";
    double h = 0, ka = 0, kb = 0, ha = 0, hb = 0;
    bool have_h = false;
    for (const auto& [k, v] : kvs) {
        if (k == "kind") kind = v;
        else if (k == "checkpoints_per_cycle") { h = parse_number(k, v); have_h = true; }
        else if (k == "k_alpha") ka = parse_number(k, v);
        else if (k == "k_beta") kb = parse_number(k, v);
        else if (k == "h_alpha") ha = parse_number(k, v);
        else if (k == "h_beta") hb = parse_number(k, v);
        else throw ConfigError("unknown key '" + k + "' in [policy]");
    }
    if (kind == "single") {
        if (!have_h) throw ConfigError("[policy] kind=single needs checkpoints_per_cycle");
        return CheckpointPolicy::single(h);
    }
    if (kind == "split") return CheckpointPolicy::split(ka, kb, ha, hb);
    throw ConfigError("unknown policy kind '" + kind + "' (single|split)");
}

RunConfig run_from(const ConfigFile& cfg) {
    RunConfig rc;
    rc.params = scenario_from(cfg);
    rc.policy = policy_from(cfg);
    rc.n_cycles = 10000;
    rc.seed = 1;
    for (const auto& [k, v] : section(cfg, "run")) {
        if (k == "n_cycles") rc.n_cycles = parse_int(k, v);
        else if (k == "seed") rc.seed = parse_uint(k, v);
        else if (k == "architecture") rc.architecture = parse_architecture(v);
        else throw ConfigError("unknown key '" + k + "' in [run]");
    }
    if (rc.n_cycles < 1) {
        throw ValidationError(
            std::vector<InvalidParameter>{{"n_cycles", "must be >= 1"}});
    }
    return rc;
}

SweepSpec sweep_from(const ConfigFile& cfg) {
    SweepSpec spec;
    const ScenarioParams base = scenario_from(cfg);
    spec.scenarios = {{"base", base}};
    for (const auto& [k, v] : section(cfg, "sweep")) {
        if (k == "variable") {
            if (v == "h") spec.variable = SweptVariable::CheckpointCount;
            else if (v == "f") spec.variable = SweptVariable::MeanFailures;
            else throw ConfigError("key 'variable': expected h or f");
        } else if (k == "grid") {
            spec.grid.clear();
            for (const auto& item : split(v, ','))
                spec.grid.push_back(parse_number(k, item));
        } else if (k == "scenarios") {
            spec.scenarios.clear();
            for (const auto& name : split(v, ','))
                spec.scenarios.emplace_back(
                    name, name == "base" ? base : preset_by_name(name));
        } else if (k == "policies") {
            spec.policies.clear();
            for (const auto& entry : split(v, ';'))
                spec.policies.push_back(parse_policy_entry(entry));
        } else if (k == "architectures") {
            spec.architectures.clear();
            for (const auto& name : split(v, ','))
                spec.architectures.push_back(parse_architecture(name));
        } else if (k == "experiment") {
            if (v != "paoi_vs_h" && v != "architectures" && v != "policies")
                throw ConfigError(
                    "key 'experiment': expected paoi_vs_h, architectures, or policies");
            spec.experiment = v;
        } else if (k == "with_simulation") {
            spec.with_simulation = parse_bool(k, v);
        } else if (k == "sim_cycles") {
            spec.sim_cycles = parse_int(k, v);
        } else if (k == "seed") {
            spec.seed = parse_uint(k, v);
        } else {
            throw ConfigError("unknown key '" + k + "' in [sweep]");
        }
    }
    return spec;
}

std::string serialize_scenario(const ScenarioParams& p) {
    std::ostringstream os;
    os << "[scenario]\n";
    os << "mean_processing = " << fmt_g(p.mean_processing, 17) << '\n';
    os << "mean_offtime = " << fmt_g(p.mean_offtime, 17) << '\n';
    os << "mean_failures = " << fmt_g(p.mean_failures, 17) << '\n';
    os << "mean_idle = " << fmt_g(p.mean_idle, 17) << '\n';
    os << "checkpoint_cost = " << fmt_g(p.checkpoint_cost, 17) << '\n';
    os << "restore_cost = " << fmt_g(p.restore_cost, 17) << '\n';
    os << "failure_count_dist = " << to_string(p.failure_count_dist) << '\n';
    os << "offtime_dist = " << to_string(p.offtime_dist) << '\n';
    os << "idle_dist = " << to_string(p.idle_dist) << '\n';
    return os.str();
}

std::string serialize_policy(const CheckpointPolicy& policy) {
    std::ostringstream os;
    os << "[policy]\n";
    if (policy.is_single()) {
        os << "kind = single\n";
        os << "checkpoints_per_cycle = "
           << fmt_g(policy.as_single().checkpoints_per_cycle, 17) << '\n';
    } else {
        const auto& sp = policy.as_split();
        os << "kind = split\n";
        os << "k_alpha = " << fmt_g(sp.k_alpha, 17) << '\n';
        os << "k_beta = " << fmt_g(sp.k_beta, 17) << '\n';
        os << "h_alpha = " << fmt_g(sp.h_alpha, 17) << '\n';
        os << "h_beta = " << fmt_g(sp.h_beta, 17) << '\n';
    }
    return os.str();
}

}  // namespace aoisim
