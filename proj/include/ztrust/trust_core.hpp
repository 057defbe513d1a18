#pragma once

// Trust probability model: a finite type space with a trusted subset, a
// per-entity belief over types, and Bayesian updating from observed actions
// and side evidence.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ztrust {

inline constexpr double kProbabilityTolerance = 1e-9;

// Ordered finite set of entity types with the subset regarded as non-adversarial.
class TypeSpace {
 public:
  TypeSpace(std::vector<std::string> types, const std::vector<std::string>& trusted);

  const std::vector<std::string>& types() const { return types_; }
  std::size_t size() const { return types_.size(); }
  bool is_trusted(std::size_t index) const { return trusted_[index]; }
  std::vector<std::string> trusted_types() const;
  std::size_t trusted_count() const;

  std::optional<std::size_t> find(const std::string& type) const;
  // Throws DomainError for unknown identifiers.
  std::size_t index_of(const std::string& type) const;

  friend bool operator==(const TypeSpace& a, const TypeSpace& b) {
    return a.types_ == b.types_ && a.trusted_ == b.trusted_;
  }

 private:
  std::vector<std::string> types_;
  std::vector<bool> trusted_;
};

using TypeSpacePtr = std::shared_ptr<const TypeSpace>;

// Belief held by the defender about one entity: probability mass per type.
class TrustState {
 public:
  // Validates that the mass is a probability vector over space->types().
  TrustState(TypeSpacePtr space, std::vector<double> mass, std::int64_t timestamp = 0);
  static TrustState from_map(TypeSpacePtr space, const std::map<std::string, double>& mass,
                             std::int64_t timestamp = 0);
  static TrustState uniform(TypeSpacePtr space, std::int64_t timestamp = 0);
  // Spreads `score` evenly across trusted types and the remainder across the
  // others. A space with no trusted (or no untrusted) types receives all mass
  // on the side that exists.
  static TrustState from_score(TypeSpacePtr space, double score, std::int64_t timestamp = 0);

  const TypeSpacePtr& space() const { return space_; }
  std::span<const double> mass() const { return mass_; }
  double mass_of(const std::string& type) const;
  std::int64_t timestamp() const { return timestamp_; }

  friend bool operator==(const TrustState& a, const TrustState& b) {
    return *a.space_ == *b.space_ && a.mass_ == b.mass_ && a.timestamp_ == b.timestamp_;
  }

 private:
  TypeSpacePtr space_;
  std::vector<double> mass_;
  std::int64_t timestamp_;
};

// Action likelihoods sigma(a | type). Rows keyed by type, columns by action.
class BehaviorModel {
 public:
  using Table = std::map<std::string, std::map<std::string, double>>;

  BehaviorModel(TypeSpacePtr space, std::vector<std::string> actions, const Table& likelihood);

  const TypeSpacePtr& space() const { return space_; }
  const std::vector<std::string>& actions() const { return actions_; }
  std::size_t action_index(const std::string& action) const;
  double likelihood(std::size_t type, std::size_t action) const {
    return table_[type * actions_.size() + action];
  }
  std::span<const double> row(std::size_t type) const {
    return {table_.data() + type * actions_.size(), actions_.size()};
  }

 private:
  TypeSpacePtr space_;
  std::vector<std::string> actions_;
  std::vector<double> table_;
};

// Side-evidence likelihoods h(e | a, type), one distribution per (action, type).
class EvidenceModel {
 public:
  // action -> type -> evidence -> probability
  using Table = std::map<std::string, std::map<std::string, std::map<std::string, double>>>;

  EvidenceModel(TypeSpacePtr space, std::vector<std::string> actions,
                std::vector<std::string> evidence_values, const Table& likelihood);

  const TypeSpacePtr& space() const { return space_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const std::vector<std::string>& evidence_values() const { return values_; }
  std::size_t action_index(const std::string& action) const;
  std::size_t evidence_index(const std::string& evidence) const;
  double likelihood(std::size_t action, std::size_t type, std::size_t evidence) const {
    return table_[(action * space_->size() + type) * values_.size() + evidence];
  }
  std::span<const double> row(std::size_t action, std::size_t type) const {
    return {table_.data() + (action * space_->size() + type) * values_.size(), values_.size()};
  }

 private:
  TypeSpacePtr space_;
  std::vector<std::string> actions_;
  std::vector<std::string> values_;
  std::vector<double> table_;
};

struct Observation {
  std::string action;
  std::string evidence;
  std::int64_t tick = 0;
};

struct PriorSource {
  double score = 0.0;
  double weight = 0.0;

  friend bool operator==(const PriorSource&, const PriorSource&) = default;
};

// Probability mass on the trusted subset of `space`.
double trust_score(const TrustState& state, const TypeSpace& space);
double trust_score(const TrustState& state);

TrustState bayes_update(const TrustState& state, const Observation& obs,
                        const BehaviorModel& behavior, const EvidenceModel& evidence);

// Index-based form used by the simulator hot loop; `obs` is only used for
// error reporting and the new timestamp.
TrustState bayes_update(const TrustState& state, std::size_t action, std::size_t evidence_value,
                        const Observation& obs, const BehaviorModel& behavior,
                        const EvidenceModel& evidence);

TrustState sequence_update(const TrustState& state, std::span<const Observation> observations,
                           const BehaviorModel& behavior, const EvidenceModel& evidence);

// Weight-normalized mean of source scores.
double compose_prior(std::span<const PriorSource> sources);

// Exponential relaxation of `state` toward `baseline`:
// mass = baseline + (state - baseline) * exp(-rate * elapsed).
TrustState attenuate(const TrustState& state, std::int64_t elapsed, double rate,
                     const TrustState& baseline);

}  // namespace ztrust
