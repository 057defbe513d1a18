#pragma once

// Discrete-time zero-trust loop. Each tick every entity requests access; the
// policy engine decides from the defender's current trust score; admitted
// entities act according to their true type and the evidence channel fires;
// the defender updates its belief by Bayes' rule.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ztrust/rng.hpp"
#include "ztrust/trust_core.hpp"

namespace ztrust {

enum class Decision { kGrant, kChallenge, kDeny };
std::string to_string(Decision d);

struct PolicyConfig {
  double grant_threshold = 0.7;
  double deny_threshold = 0.3;
  double decay_rate = 0.0;
  // Attenuation target; uniform over types when empty.
  std::optional<TrustState> baseline;
  // Keep observing entities after they are denied.
  bool observe_while_denied = false;

  void validate() const;
};

// score >= grant -> grant; score < deny -> deny; otherwise challenge.
Decision policy_decide(double score, const PolicyConfig& policy);

struct Profile {
  std::string name;
  BehaviorModel behavior;
  EvidenceModel evidence;
};

struct EntitySpec {
  std::string id;
  std::string true_type;
  std::vector<PriorSource> prior;
  std::string profile;
};

struct Scenario {
  TypeSpacePtr space;
  std::vector<Profile> profiles;
  std::vector<EntitySpec> entities;
  PolicyConfig policy;
  std::int64_t horizon = 1;
  std::uint64_t seed = 0;

  // Resolves references and checks invariants. Throws DomainError.
  void validate() const;
  const Profile& profile(const std::string& name) const;
};

struct Entity {
  std::string id;
  std::size_t true_type = 0;
  std::size_t profile = 0;
  TrustState trust;
  Rng rng;
};

struct SimState {
  std::int64_t tick = 0;
  std::vector<Entity> entities;
};

struct StepRecord {
  std::int64_t tick = 0;
  std::string entity;
  Decision decision = Decision::kGrant;
  std::optional<std::string> action;
  std::optional<std::string> evidence;
  double score_before = 0.0;
  double score_after = 0.0;
};

struct SimTrace {
  std::uint64_t seed = 0;
  std::vector<StepRecord> records;
};

std::string sample_action(Rng& rng, const BehaviorModel& behavior, const std::string& type);
std::size_t sample_action(Rng& rng, const BehaviorModel& behavior, std::size_t type);
std::string generate_evidence(Rng& rng, const EvidenceModel& evidence, const std::string& action,
                              const std::string& type);
std::size_t generate_evidence(Rng& rng, const EvidenceModel& evidence, std::size_t action,
                              std::size_t type);

// Fresh state at tick 0: priors composed from each entity's sources and one
// random stream per entity derived from the scenario seed.
SimState initial_state(const Scenario& scenario);

struct StepResult {
  SimState state;
  std::vector<StepRecord> records;
};

StepResult step(const Scenario& scenario, const SimState& state);

SimTrace run(const Scenario& scenario);

struct EntityMetrics {
  std::string id;
  std::string true_type;
  bool trusted_type = false;
  std::optional<std::int64_t> time_to_detection;
  bool false_lockout = false;
  double final_score = 0.0;
  std::vector<double> trajectory;  // after-score per tick
};

struct Metrics {
  std::vector<EntityMetrics> entities;
};

Metrics compute_metrics(const Scenario& scenario, const SimTrace& trace);

}  // namespace ztrust
