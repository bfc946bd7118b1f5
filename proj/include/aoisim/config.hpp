#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aoisim/experiments.hpp"
#include "aoisim/params.hpp"
#include "aoisim/simulator.hpp"

namespace aoisim {

/// Structural problem with a config document (syntax, unknown key,
/// unparsable value, missing section).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// INI-style document: `[section]` headers and `key = value` lines.
/// `#` starts a full-line comment. Later keys override earlier ones.
struct ConfigFile {
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);
    bool has(const std::string& section) const { return sections.count(section) > 0; }
};

/// Build domain objects from config sections. Unknown keys throw
/// ConfigError; invariant violations throw ValidationError.
ScenarioParams scenario_from(const ConfigFile& cfg);
CheckpointPolicy policy_from(const ConfigFile& cfg);
RunConfig run_from(const ConfigFile& cfg);
SweepSpec sweep_from(const ConfigFile& cfg);

std::string serialize_scenario(const ScenarioParams& params);
std::string serialize_policy(const CheckpointPolicy& policy);

}  // namespace aoisim
