#pragma once

// Scenario documents: JSON text with a schema tag and labeled probability
// rows. See README.md for the full layout.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ztrust/simulator.hpp"
#include "ztrust/trust_core.hpp"

namespace ztrust {

inline constexpr const char* kScenarioSchema = "ztrust.scenario/1";

struct ProfileSpec {
  std::string name;
  std::vector<std::string> actions;
  std::vector<std::string> evidence_values;
  BehaviorModel::Table behavior;
  EvidenceModel::Table evidence;

  friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

struct EntityEntry {
  std::string id;
  std::string true_type;
  std::string profile;
  std::vector<PriorSource> prior;

  friend bool operator==(const EntityEntry&, const EntityEntry&) = default;
};

struct PolicySpec {
  double grant = 0.7;
  double deny = 0.3;
  double decay_rate = 0.0;
  std::optional<std::map<std::string, double>> baseline;
  bool observe_while_denied = false;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

struct ScenarioSpec {
  std::vector<std::string> types;
  std::vector<std::string> trusted;
  std::vector<ProfileSpec> profiles;
  std::vector<EntityEntry> entities;
  PolicySpec policy;
  std::int64_t horizon = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// Parses and validates. Throws ValidationError naming section and key.
ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec load_scenario_file(const std::string& path);

// Canonical JSON rendering (rows in declared order, defaults written out).
std::string serialize_scenario(const ScenarioSpec& spec);

Scenario to_scenario(const ScenarioSpec& spec);

}  // namespace ztrust
