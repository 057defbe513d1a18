#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ztrust {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape/key mismatch between values that must agree (e.g. a TrustState and
// the TypeSpace it is evaluated against).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's domain (negative rate, bad probability,
// unknown label, non-finite payoff).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A likelihood table failed validation at construction.
class ModelError : public Error {
 public:
  using Error::Error;
};

class NoPriorSources : public Error {
 public:
  NoPriorSources() : Error("no prior sources: need at least one source with positive weight") {}
};

// An observation that every type with positive mass assigns probability zero.
class ZeroProbabilityObservation : public Error {
 public:
  ZeroProbabilityObservation(std::string action, std::string evidence, long long tick,
                             std::optional<std::size_t> index = std::nullopt,
                             std::string entity = {});

  const std::string& action() const { return action_; }
  const std::string& evidence() const { return evidence_; }
  long long tick() const { return tick_; }
  // Position inside a sequence_update batch, when the failure came from one.
  std::optional<std::size_t> index() const { return index_; }
  // Entity id, when the failure came from the simulator.
  const std::string& entity() const { return entity_; }

  ZeroProbabilityObservation with_index(std::size_t index) const;
  ZeroProbabilityObservation with_entity(std::string entity) const;

 private:
  std::string action_;
  std::string evidence_;
  long long tick_;
  std::optional<std::size_t> index_;
  std::string entity_;
};

class EnumerationBudgetExceeded : public Error {
 public:
  EnumerationBudgetExceeded(double required, std::size_t budget);
  std::size_t budget() const { return budget_; }
  double required() const { return required_; }

 private:
  double required_;
  std::size_t budget_;
};

// Configuration document failure; always names where it happened.
class ValidationError : public Error {
 public:
  ValidationError(std::string location, std::string reason);
  const std::string& location() const { return location_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string location_;
  std::string reason_;
};

// Output sink stopped accepting records.
class SinkError : public Error {
 public:
  explicit SinkError(std::size_t written)
      : Error("trace sink write failed after " + std::to_string(written) + " records"),
        written_(written) {}
  std::size_t written() const { return written_; }

 private:
  std::size_t written_;
};

}  // namespace ztrust
