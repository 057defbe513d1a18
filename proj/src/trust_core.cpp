#include "ztrust/trust_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "ztrust/error.hpp"

namespace ztrust {

namespace {

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label,
                       const char* what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DomainError(std::string("unknown ") + what + " '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

void require_unique(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) throw ModelError(std::string(what) + " list is empty");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw ModelError(std::string("duplicate ") + what + " '" + l + "'");
  }
}

std::string format_sum(double sum) {
  std::ostringstream os;
  os.precision(12);
  os << sum;
  return os.str();
}

// Fills `out` from a labeled row; every label must be present and the row
// must be a probability vector.
void read_row(const std::map<std::string, double>& row, const std::vector<std::string>& labels,
              const std::string& where, double* out) {
  for (const auto& [key, _] : row) {
    if (std::find(labels.begin(), labels.end(), key) == labels.end())
      throw ModelError(where + ": unknown label '" + key + "'");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = row.find(labels[i]);
    double p = it == row.end() ? 0.0 : it->second;
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw ModelError(where + ": probability for '" + labels[i] + "' outside [0,1]");
    out[i] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance)
    throw ModelError(where + ": probabilities sum to " + format_sum(sum) + ", expected 1");
}

void require_same_space(const TrustState& state, const TypeSpacePtr& space, const char* what) {
  if (state.space() != space && !(*state.space() == *space))
    throw StructuralError(std::string("trust state and ") + what + " use different type spaces");
}

}  // namespace

TypeSpace::TypeSpace(std::vector<std::string> types, const std::vector<std::string>& trusted)
    : types_(std::move(types)), trusted_(types_.size(), false) {
  require_unique(types_, "type");
  for (const auto& t : trusted) {
    auto idx = find(t);
    if (!idx) throw ModelError("trusted type '" + t + "' is not in the type space");
    trusted_[*idx] = true;
  }
}

std::vector<std::string> TypeSpace::trusted_types() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (trusted_[i]) out.push_back(types_[i]);
  return out;
}

std::size_t TypeSpace::trusted_count() const {
  return static_cast<std::size_t>(std::count(trusted_.begin(), trusted_.end(), true));
}

std::optional<std::size_t> TypeSpace::find(const std::string& type) const {
  auto it = std::find(types_.begin(), types_.end(), type);
  if (it == types_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - types_.begin());
}

std::size_t TypeSpace::index_of(const std::string& type) const {
  return find_label(types_, type, "type");
}

TrustState::TrustState(TypeSpacePtr space, std::vector<double> mass, std::int64_t timestamp)
    : space_(std::move(space)), mass_(std::move(mass)), timestamp_(timestamp) {
  if (!space_) throw StructuralError("trust state without a type space");
  if (mass_.size() != space_->size())
    throw StructuralError("trust state has " + std::to_string(mass_.size()) +
                          " entries, type space has " + std::to_string(space_->size()));
  if (timestamp_ < 0) throw DomainError("trust state timestamp is negative");
  double sum = 0.0;
  for (double p : mass_) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw DomainError("trust state probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance)
    throw DomainError("trust state mass sums to " + format_sum(sum) + ", expected 1");
}

TrustState TrustState::from_map(TypeSpacePtr space, const std::map<std::string, double>& mass,
                                std::int64_t timestamp) {
  if (mass.size() != space->size())
    throw StructuralError("trust state keys do not match the type space");
  std::vector<double> v(space->size());
  for (const auto& [type, p] : mass) {
    auto idx = space->find(type);
    if (!idx) throw StructuralError("trust state key '" + type + "' is not a type");
    v[*idx] = p;
  }
  return TrustState(std::move(space), std::move(v), timestamp);
}

TrustState TrustState::uniform(TypeSpacePtr space, std::int64_t timestamp) {
  std::vector<double> v(space->size(), 1.0 / static_cast<double>(space->size()));
  return TrustState(std::move(space), std::move(v), timestamp);
}

TrustState TrustState::from_score(TypeSpacePtr space, double score, std::int64_t timestamp) {
  if (!std::isfinite(score) || score < 0.0 || score > 1.0)
    throw DomainError("trust score outside [0,1]");
  const std::size_t n = space->size();
  const std::size_t n_trusted = space->trusted_count();
  const std::size_t n_other = n - n_trusted;
  double trusted_mass = score;
  if (n_trusted == 0) trusted_mass = 0.0;
  if (n_other == 0) trusted_mass = 1.0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = space->is_trusted(i) ? trusted_mass / static_cast<double>(n_trusted)
                                : (1.0 - trusted_mass) / static_cast<double>(n_other);
  }
  return TrustState(std::move(space), std::move(v), timestamp);
}

double TrustState::mass_of(const std::string& type) const {
  return mass_[space_->index_of(type)];
}

BehaviorModel::BehaviorModel(TypeSpacePtr space, std::vector<std::string> actions,
                             const Table& likelihood)
    : space_(std::move(space)), actions_(std::move(actions)) {
  require_unique(actions_, "action");
  table_.assign(space_->size() * actions_.size(), 0.0);
  for (const auto& [type, _] : likelihood) {
    if (!space_->find(type)) throw ModelError("behavior row for unknown type '" + type + "'");
  }
  for (std::size_t t = 0; t < space_->size(); ++t) {
    const auto& type = space_->types()[t];
    auto it = likelihood.find(type);
    if (it == likelihood.end()) throw ModelError("behavior model has no row for type '" + type + "'");
    read_row(it->second, actions_, "behavior row for type '" + type + "'",
             table_.data() + t * actions_.size());
  }
}

std::size_t BehaviorModel::action_index(const std::string& action) const {
  return find_label(actions_, action, "action");
}

EvidenceModel::EvidenceModel(TypeSpacePtr space, std::vector<std::string> actions,
                             std::vector<std::string> evidence_values, const Table& likelihood)
    : space_(std::move(space)), actions_(std::move(actions)), values_(std::move(evidence_values)) {
  require_unique(actions_, "action");
  require_unique(values_, "evidence value");
  table_.assign(actions_.size() * space_->size() * values_.size(), 0.0);
  for (const auto& [action, rows] : likelihood) {
    if (std::find(actions_.begin(), actions_.end(), action) == actions_.end())
      throw ModelError("evidence rows for unknown action '" + action + "'");
    for (const auto& [type, _] : rows) {
      if (!space_->find(type))
        throw ModelError("evidence row for unknown type '" + type + "' under action '" + action + "'");
    }
  }
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    auto it = likelihood.find(actions_[a]);
    if (it == likelihood.end())
      throw ModelError("evidence model has no rows for action '" + actions_[a] + "'");
    for (std::size_t t = 0; t < space_->size(); ++t) {
      const auto& type = space_->types()[t];
      auto row = it->second.find(type);
      if (row == it->second.end())
        throw ModelError("evidence model has no row for action '" + actions_[a] + "', type '" +
                         type + "'");
      read_row(row->second, values_,
               "evidence row for action '" + actions_[a] + "', type '" + type + "'",
               table_.data() + (a * space_->size() + t) * values_.size());
    }
  }
}

std::size_t EvidenceModel::action_index(const std::string& action) const {
  return find_label(actions_, action, "action");
}

std::size_t EvidenceModel::evidence_index(const std::string& evidence) const {
  return find_label(values_, evidence, "evidence value");
}

double trust_score(const TrustState& state, const TypeSpace& space) {
  if (!(*state.space() == space))
    throw StructuralError("trust state keys do not match the type space");
  return trust_score(state);
}

double trust_score(const TrustState& state) {
  const auto& space = *state.space();
  double score = 0.0;
  auto mass = state.mass();
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (space.is_trusted(i)) score += mass[i];
  return std::clamp(score, 0.0, 1.0);
}

namespace {

TrustState update_with_indices(const TrustState& state, std::size_t behavior_action,
                               std::size_t evidence_action, std::size_t evidence_value,
                               const Observation& obs, const BehaviorModel& behavior,
                               const EvidenceModel& evidence) {
  if (obs.tick < 0) throw DomainError("observation tick is negative");
  auto prior = state.mass();
  std::vector<double> post(prior.size());
  double z = 0.0;
  for (std::size_t t = 0; t < prior.size(); ++t) {
    post[t] = evidence.likelihood(evidence_action, t, evidence_value) *
              behavior.likelihood(t, behavior_action) * prior[t];
    z += post[t];
  }
  if (!(z > 0.0)) throw ZeroProbabilityObservation(obs.action, obs.evidence, obs.tick);
  for (double& p : post) p /= z;
  return TrustState(state.space(), std::move(post), obs.tick);
}

}  // namespace

TrustState bayes_update(const TrustState& state, const Observation& obs,
                        const BehaviorModel& behavior, const EvidenceModel& evidence) {
  require_same_space(state, behavior.space(), "behavior model");
  require_same_space(state, evidence.space(), "evidence model");
  return update_with_indices(state, behavior.action_index(obs.action),
                             evidence.action_index(obs.action),
                             evidence.evidence_index(obs.evidence), obs, behavior, evidence);
}

TrustState bayes_update(const TrustState& state, std::size_t action, std::size_t evidence_value,
                        const Observation& obs, const BehaviorModel& behavior,
                        const EvidenceModel& evidence) {
  if (behavior.actions() != evidence.actions())
    throw StructuralError("behavior and evidence models list different actions");
  if (action >= behavior.actions().size() || evidence_value >= evidence.evidence_values().size())
    throw DomainError("observation index out of range");
  return update_with_indices(state, action, action, evidence_value, obs, behavior, evidence);
}

TrustState sequence_update(const TrustState& state, std::span<const Observation> observations,
                           const BehaviorModel& behavior, const EvidenceModel& evidence) {
  TrustState current = state;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (i > 0 && observations[i].tick < observations[i - 1].tick)
      throw DomainError("observations out of tick order at index " + std::to_string(i));
    try {
      current = bayes_update(current, observations[i], behavior, evidence);
    } catch (const ZeroProbabilityObservation& e) {
      throw e.with_index(i);
    }
  }
  return current;
}

double compose_prior(std::span<const PriorSource> sources) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& s : sources) {
    if (!std::isfinite(s.score) || s.score < 0.0 || s.score > 1.0)
      throw DomainError("prior source score outside [0,1]");
    if (!std::isfinite(s.weight) || s.weight < 0.0)
      throw DomainError("prior source weight is negative");
    weighted += s.weight * s.score;
    total += s.weight;
  }
  if (!(total > 0.0)) throw NoPriorSources();
  return std::clamp(weighted / total, 0.0, 1.0);
}

TrustState attenuate(const TrustState& state, std::int64_t elapsed, double rate,
                     const TrustState& baseline) {
  if (elapsed < 0) throw DomainError("attenuation elapsed time is negative");
  if (!std::isfinite(rate) || rate < 0.0) throw DomainError("attenuation rate is negative");
  require_same_space(baseline, state.space(), "baseline");
  const std::int64_t timestamp = state.timestamp() + elapsed;
  if (rate == 0.0 || elapsed == 0)
    return TrustState(state.space(), {state.mass().begin(), state.mass().end()}, timestamp);

  const double keep = std::exp(-rate * static_cast<double>(elapsed));
  auto cur = state.mass();
  auto base = baseline.mass();
  std::vector<double> out(cur.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    out[i] = std::clamp(base[i] + (cur[i] - base[i]) * keep, 0.0, 1.0);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return TrustState(state.space(), std::move(out), timestamp);
}

}  // namespace ztrust
