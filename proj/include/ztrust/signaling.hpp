#pragma once

// Sender-receiver signaling games: Bayes posteriors over sender types,
// receiver and sender best responses, and pure perfect Bayesian equilibrium
// enumeration with an explicit off-path belief rule.

#include <cstddef>
#include <string>
#include <vector>

#include "ztrust/bayesian_game.hpp"
#include "ztrust/matrix.hpp"

namespace ztrust {

class SignalingGameSpec {
 public:
  // sender_utility[type] is a signals x actions matrix.
  // receiver_utility is an actions x types matrix.
  SignalingGameSpec(std::vector<std::string> types, std::vector<double> prior,
                    std::vector<std::string> signals, std::vector<std::string> actions,
                    std::vector<Matrix> sender_utility, Matrix receiver_utility);

  const std::vector<std::string>& types() const { return types_; }
  const std::vector<double>& prior() const { return prior_; }
  const std::vector<std::string>& signals() const { return signals_; }
  const std::vector<std::string>& actions() const { return actions_; }
  double sender_utility(std::size_t type, std::size_t signal, std::size_t action) const {
    return sender_utility_[type](signal, action);
  }
  double receiver_utility(std::size_t action, std::size_t type) const {
    return receiver_utility_(action, type);
  }
  const std::vector<Matrix>& sender_table() const { return sender_utility_; }
  const Matrix& receiver_table() const { return receiver_utility_; }

  std::size_t signal_index(const std::string& signal) const;
  std::size_t action_index(const std::string& action) const;
  std::size_t type_index(const std::string& type) const;

  SignalingGameSpec with_scaled_sender(double factor) const;
  SignalingGameSpec with_scaled_receiver(double factor) const;

 private:
  std::vector<std::string> types_;
  std::vector<double> prior_;
  std::vector<std::string> signals_;
  std::vector<std::string> actions_;
  std::vector<Matrix> sender_utility_;
  Matrix receiver_utility_;
};

enum class OffPathRule { kUniform, kPrior, kPessimistic };
std::string to_string(OffPathRule rule);
OffPathRule parse_off_path_rule(const std::string& text);

struct Belief {
  std::vector<double> over_types;
  bool on_path = true;

  friend bool operator==(const Belief&, const Belief&) = default;
};

// Sender behavioral strategy: row per type, probability per signal.
using SenderMixedStrategy = std::vector<std::vector<double>>;

// p(type | signal) by Bayes' rule when the signal has positive probability;
// the off-path rule's belief otherwise.
Belief signal_posterior(const SignalingGameSpec& spec, const SenderMixedStrategy& sender,
                        std::size_t signal, OffPathRule rule = OffPathRule::kUniform);
Belief signal_posterior(const SignalingGameSpec& spec, const SenderMixedStrategy& sender,
                        const std::string& signal, OffPathRule rule = OffPathRule::kUniform);

// Belief an off-path signal receives under `rule`. Pessimistic places all
// mass on the type whose induced receiver best response gives the sender the
// lowest prior-weighted payoff at that signal.
std::vector<double> off_path_belief(const SignalingGameSpec& spec, std::size_t signal,
                                    OffPathRule rule);

struct Choice {
  std::size_t index = 0;
  double value = 0.0;
  bool tie = false;
};

double receiver_expected_utility(const SignalingGameSpec& spec, const std::vector<double>& belief,
                                 std::size_t action);
Choice receiver_best_response(const SignalingGameSpec& spec, const std::vector<double>& belief);
Choice sender_optimal_signal(const SignalingGameSpec& spec, std::size_t type,
                             const std::vector<std::size_t>& receiver_strategy);

enum class PbeClass { kPooling, kSeparating, kHybrid };
std::string to_string(PbeClass c);

struct PBEResult {
  std::vector<std::size_t> sender;    // type -> signal
  std::vector<std::size_t> receiver;  // signal -> action
  std::vector<Belief> beliefs;        // per signal
  PbeClass classification = PbeClass::kPooling;

  friend bool operator==(const PBEResult&, const PBEResult&) = default;
};

SenderMixedStrategy as_mixed(const SignalingGameSpec& spec, const std::vector<std::size_t>& sender);
PbeClass classify(const SignalingGameSpec& spec, const std::vector<std::size_t>& sender);

std::vector<PBEResult> find_pbe(const SignalingGameSpec& spec, OffPathRule rule = OffPathRule::kUniform,
                                std::size_t budget = kDefaultEnumerationBudget);

// Recomputes beliefs and re-runs every deviation check for one candidate.
// Returns an empty string on success, otherwise the first failed condition.
std::string verify_pbe(const SignalingGameSpec& spec, const PBEResult& candidate, OffPathRule rule);

}  // namespace ztrust
