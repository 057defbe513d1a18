#include "ztrust/error.hpp"

#include <sstream>

namespace ztrust {

namespace {

std::string describe_observation(const std::string& action, const std::string& evidence,
                                 long long tick, std::optional<std::size_t> index,
                                 const std::string& entity) {
  std::ostringstream os;
  os << "zero-probability observation (action=" << action << ", evidence=" << evidence
     << ", tick=" << tick << ")";
  if (index) os << " at index " << *index;
  if (!entity.empty()) os << " for entity " << entity;
  return os.str();
}

}  // namespace

ZeroProbabilityObservation::ZeroProbabilityObservation(std::string action, std::string evidence,
                                                       long long tick,
                                                       std::optional<std::size_t> index,
                                                       std::string entity)
    : Error(describe_observation(action, evidence, tick, index, entity)),
      action_(std::move(action)),
      evidence_(std::move(evidence)),
      tick_(tick),
      index_(index),
      entity_(std::move(entity)) {}

ZeroProbabilityObservation ZeroProbabilityObservation::with_index(std::size_t index) const {
  return {action_, evidence_, tick_, index, entity_};
}

ZeroProbabilityObservation ZeroProbabilityObservation::with_entity(std::string entity) const {
  return {action_, evidence_, tick_, index_, std::move(entity)};
}

static std::string describe_budget(double required, std::size_t budget) {
  std::ostringstream os;
  os << "enumeration budget exceeded: " << required << " profiles required, budget is " << budget;
  return os.str();
}

EnumerationBudgetExceeded::EnumerationBudgetExceeded(double required, std::size_t budget)
    : Error(describe_budget(required, budget)),
      required_(required),
      budget_(budget) {}

ValidationError::ValidationError(std::string location, std::string reason)
    : Error(location + ": " + reason), location_(std::move(location)), reason_(std::move(reason)) {}

}  // namespace ztrust
