#include "ztrust/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ztrust/error.hpp"

namespace ztrust {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::kGrant: return "grant";
    case Decision::kChallenge: return "challenge";
    case Decision::kDeny: return "deny";
  }
  return "unknown";
}

void PolicyConfig::validate() const {
  if (!(deny_threshold >= 0.0 && deny_threshold <= grant_threshold && grant_threshold <= 1.0))
    throw DomainError("policy thresholds must satisfy 0 <= deny <= grant <= 1");
  if (!std::isfinite(decay_rate) || decay_rate < 0.0) throw DomainError("policy decay rate must be >= 0");
}

Decision policy_decide(double score, const PolicyConfig& policy) {
  if (score >= policy.grant_threshold) return Decision::kGrant;
  if (score < policy.deny_threshold) return Decision::kDeny;
  return Decision::kChallenge;
}

void Scenario::validate() const {
  if (!space) throw DomainError("scenario has no type space");
  policy.validate();
  if (policy.baseline && !(*policy.baseline->space() == *space))
    throw DomainError("policy baseline uses a different type space");
  if (horizon < 1) throw DomainError("scenario horizon must be >= 1");
  std::set<std::string> profile_names;
  for (const auto& p : profiles) {
    if (!profile_names.insert(p.name).second) throw DomainError("duplicate profile '" + p.name + "'");
    if (!(*p.behavior.space() == *space) || !(*p.evidence.space() == *space))
      throw DomainError("profile '" + p.name + "' uses a different type space");
    if (p.behavior.actions() != p.evidence.actions())
      throw DomainError("profile '" + p.name + "' lists different actions in its behavior and evidence models");
  }
  std::set<std::string> ids;
  for (const auto& e : entities) {
    if (!ids.insert(e.id).second) throw DomainError("duplicate entity '" + e.id + "'");
    if (!space->find(e.true_type))
      throw DomainError("entity '" + e.id + "' has unknown true type '" + e.true_type + "'");
    if (!profile_names.count(e.profile))
      throw DomainError("entity '" + e.id + "' references unknown profile '" + e.profile + "'");
  }
}

const Profile& Scenario::profile(const std::string& name) const {
  for (const auto& p : profiles)
    if (p.name == name) return p;
  throw DomainError("unknown profile '" + name + "'");
}

std::size_t sample_action(Rng& rng, const BehaviorModel& behavior, std::size_t type) {
  return rng.categorical(behavior.row(type));
}

std::string sample_action(Rng& rng, const BehaviorModel& behavior, const std::string& type) {
  return behavior.actions()[sample_action(rng, behavior, behavior.space()->index_of(type))];
}

std::size_t generate_evidence(Rng& rng, const EvidenceModel& evidence, std::size_t action,
                              std::size_t type) {
  return rng.categorical(evidence.row(action, type));
}

std::string generate_evidence(Rng& rng, const EvidenceModel& evidence, const std::string& action,
                              const std::string& type) {
  return evidence.evidence_values()[generate_evidence(rng, evidence, evidence.action_index(action),
                                                      evidence.space()->index_of(type))];
}

SimState initial_state(const Scenario& scenario) {
  scenario.validate();
  SimState state;
  for (const auto& spec : scenario.entities) {
    std::size_t profile = 0;
    while (scenario.profiles[profile].name != spec.profile) ++profile;
    const double prior = compose_prior(spec.prior);
    state.entities.push_back(Entity{spec.id, scenario.space->index_of(spec.true_type), profile,
                                    TrustState::from_score(scenario.space, prior, 0),
                                    Rng(entity_stream_seed(scenario.seed, spec.id))});
  }
  return state;
}

StepResult step(const Scenario& scenario, const SimState& state) {
  if (state.tick >= scenario.horizon) throw DomainError("step called at or past the horizon");
  const std::int64_t tick = state.tick + 1;
  const TrustState baseline = scenario.policy.baseline ? *scenario.policy.baseline
                                                       : TrustState::uniform(scenario.space);
  StepResult out{SimState{tick, {}}, {}};
  out.state.entities.reserve(state.entities.size());
  out.records.reserve(state.entities.size());

  for (const Entity& current : state.entities) {
    Entity next = current;
    const Profile& profile = scenario.profiles[next.profile];
    StepRecord rec;
    rec.tick = tick;
    rec.entity = next.id;
    rec.score_before = trust_score(next.trust);
    rec.decision = policy_decide(rec.score_before, scenario.policy);

    TrustState trust = attenuate(next.trust, tick - next.trust.timestamp(), scenario.policy.decay_rate, baseline);
    if (rec.decision != Decision::kDeny || scenario.policy.observe_while_denied) {
      const std::size_t a = sample_action(next.rng, profile.behavior, next.true_type);
      const std::size_t e = generate_evidence(next.rng, profile.evidence, a, next.true_type);
      Observation obs{profile.behavior.actions()[a], profile.evidence.evidence_values()[e], tick};
      try {
        trust = bayes_update(trust, a, e, obs, profile.behavior, profile.evidence);
      } catch (const ZeroProbabilityObservation& err) {
        throw err.with_entity(next.id);
      }
      rec.action = obs.action;
      rec.evidence = obs.evidence;
    }
    next.trust = std::move(trust);
    rec.score_after = trust_score(next.trust);
    out.records.push_back(std::move(rec));
    out.state.entities.push_back(std::move(next));
  }
  return out;
}

SimTrace run(const Scenario& scenario) {
  SimTrace trace;
  trace.seed = scenario.seed;
  SimState state = initial_state(scenario);
  trace.records.reserve(static_cast<std::size_t>(scenario.horizon) * state.entities.size());
  while (state.tick < scenario.horizon) {
    auto result = step(scenario, state);
    for (auto& r : result.records) trace.records.push_back(std::move(r));
    state = std::move(result.state);
  }
  return trace;
}

Metrics compute_metrics(const Scenario& scenario, const SimTrace& trace) {
  Metrics m;
  std::map<std::string, std::size_t> slot;
  for (const auto& e : scenario.entities) {
    EntityMetrics em;
    em.id = e.id;
    em.true_type = e.true_type;
    em.trusted_type = scenario.space->is_trusted(scenario.space->index_of(e.true_type));
    em.final_score = compose_prior(e.prior);
    slot[e.id] = m.entities.size();
    m.entities.push_back(std::move(em));
  }
  for (const auto& r : trace.records) {
    auto it = slot.find(r.entity);
    if (it == slot.end()) throw DomainError("trace references unknown entity '" + r.entity + "'");
    auto& em = m.entities[it->second];
    em.trajectory.push_back(r.score_after);
    em.final_score = r.score_after;
    if (!em.time_to_detection && r.score_after < scenario.policy.deny_threshold) em.time_to_detection = r.tick;
    if (em.trusted_type && r.decision == Decision::kDeny) em.false_lockout = true;
  }
  return m;
}

}  // namespace ztrust
