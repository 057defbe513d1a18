#include "ztrust/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ztrust/error.hpp"
#include "ztrust/trust_core.hpp"
#include "ztrust/zero_sum.hpp"

namespace ztrust {

namespace {

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label,
                       const char* what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DomainError(std::string("unknown ") + what + " '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

void require_labels(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) throw DomainError(std::string("signaling game has no ") + what);
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw DomainError(std::string("duplicate ") + what + " labels");
}

void check_belief(const SignalingGameSpec& spec, const std::vector<double>& belief) {
  if (belief.size() != spec.types().size()) throw DomainError("belief length does not match type count");
  double s = 0.0;
  for (double b : belief) {
    if (!std::isfinite(b) || b < 0.0) throw DomainError("belief has a negative entry");
    s += b;
  }
  if (std::abs(s - 1.0) > kProbabilityTolerance) throw DomainError("belief does not sum to 1");
}

}  // namespace

SignalingGameSpec::SignalingGameSpec(std::vector<std::string> types, std::vector<double> prior,
                                     std::vector<std::string> signals,
                                     std::vector<std::string> actions,
                                     std::vector<Matrix> sender_utility, Matrix receiver_utility)
    : types_(std::move(types)),
      prior_(std::move(prior)),
      signals_(std::move(signals)),
      actions_(std::move(actions)),
      sender_utility_(std::move(sender_utility)),
      receiver_utility_(std::move(receiver_utility)) {
  require_labels(types_, "types");
  require_labels(signals_, "signals");
  require_labels(actions_, "actions");
  if (prior_.size() != types_.size()) throw DomainError("prior length does not match type count");
  double s = 0.0;
  for (double p : prior_) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("prior has a negative entry");
    s += p;
  }
  if (std::abs(s - 1.0) > kProbabilityTolerance) throw DomainError("prior does not sum to 1");
  if (sender_utility_.size() != types_.size()) throw DomainError("sender utility missing for some type");
  for (const auto& m : sender_utility_) {
    if (m.rows() != signals_.size() || m.cols() != actions_.size())
      throw DomainError("sender utility table must be signals x actions");
    if (!m.all_finite()) throw DomainError("sender utility has non-finite entries");
  }
  if (receiver_utility_.rows() != actions_.size() || receiver_utility_.cols() != types_.size())
    throw DomainError("receiver utility table must be actions x types");
  if (!receiver_utility_.all_finite()) throw DomainError("receiver utility has non-finite entries");
}

std::size_t SignalingGameSpec::signal_index(const std::string& signal) const {
  return find_label(signals_, signal, "signal");
}
std::size_t SignalingGameSpec::action_index(const std::string& action) const {
  return find_label(actions_, action, "action");
}
std::size_t SignalingGameSpec::type_index(const std::string& type) const {
  return find_label(types_, type, "type");
}

SignalingGameSpec SignalingGameSpec::with_scaled_sender(double factor) const {
  std::vector<Matrix> scaled;
  for (const auto& m : sender_utility_) scaled.push_back(m.scaled(factor));
  return {types_, prior_, signals_, actions_, std::move(scaled), receiver_utility_};
}

SignalingGameSpec SignalingGameSpec::with_scaled_receiver(double factor) const {
  return {types_, prior_, signals_, actions_, sender_utility_, receiver_utility_.scaled(factor)};
}

std::string to_string(OffPathRule rule) {
  switch (rule) {
    case OffPathRule::kUniform: return "uniform";
    case OffPathRule::kPrior: return "prior";
    case OffPathRule::kPessimistic: return "pessimistic";
  }
  return "unknown";
}

OffPathRule parse_off_path_rule(const std::string& text) {
  if (text == "uniform") return OffPathRule::kUniform;
  if (text == "prior") return OffPathRule::kPrior;
  if (text == "pessimistic") return OffPathRule::kPessimistic;
  throw DomainError("unknown off-path rule '" + text + "' (expected uniform, prior, or pessimistic)");
}

double receiver_expected_utility(const SignalingGameSpec& spec, const std::vector<double>& belief,
                                 std::size_t action) {
  double v = 0.0;
  for (std::size_t t = 0; t < belief.size(); ++t) v += belief[t] * spec.receiver_utility(action, t);
  return v;
}

Choice receiver_best_response(const SignalingGameSpec& spec, const std::vector<double>& belief) {
  check_belief(spec, belief);
  Choice best{0, receiver_expected_utility(spec, belief, 0), false};
  for (std::size_t a = 1; a < spec.actions().size(); ++a) {
    const double v = receiver_expected_utility(spec, belief, a);
    if (v > best.value + kEquilibriumTolerance) {
      best = {a, v, false};
    } else if (std::abs(v - best.value) <= kEquilibriumTolerance) {
      best.tie = true;
    }
  }
  return best;
}

Choice sender_optimal_signal(const SignalingGameSpec& spec, std::size_t type,
                             const std::vector<std::size_t>& receiver_strategy) {
  if (type >= spec.types().size()) throw DomainError("sender type out of range");
  if (receiver_strategy.size() != spec.signals().size())
    throw DomainError("receiver strategy must assign an action to every signal");
  for (std::size_t a : receiver_strategy)
    if (a >= spec.actions().size()) throw DomainError("receiver strategy uses an unknown action");
  Choice best{0, spec.sender_utility(type, 0, receiver_strategy[0]), false};
  for (std::size_t s = 1; s < spec.signals().size(); ++s) {
    const double v = spec.sender_utility(type, s, receiver_strategy[s]);
    if (v > best.value + kEquilibriumTolerance) {
      best = {s, v, false};
    } else if (std::abs(v - best.value) <= kEquilibriumTolerance) {
      best.tie = true;
    }
  }
  return best;
}

std::vector<double> off_path_belief(const SignalingGameSpec& spec, std::size_t signal,
                                    OffPathRule rule) {
  const std::size_t n = spec.types().size();
  switch (rule) {
    case OffPathRule::kUniform:
      return std::vector<double>(n, 1.0 / static_cast<double>(n));
    case OffPathRule::kPrior:
      return spec.prior();
    case OffPathRule::kPessimistic: {
      std::size_t worst = 0;
      double worst_value = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        std::vector<double> point(n, 0.0);
        point[t] = 1.0;
        const std::size_t action = receiver_best_response(spec, point).index;
        double sender_value = 0.0;
        for (std::size_t u = 0; u < n; ++u)
          sender_value += spec.prior()[u] * spec.sender_utility(u, signal, action);
        if (t == 0 || sender_value < worst_value - kEquilibriumTolerance) {
          worst = t;
          worst_value = sender_value;
        }
      }
      std::vector<double> point(n, 0.0);
      point[worst] = 1.0;
      return point;
    }
  }
  throw DomainError("unknown off-path rule");
}

Belief signal_posterior(const SignalingGameSpec& spec, const SenderMixedStrategy& sender,
                        std::size_t signal, OffPathRule rule) {
  if (signal >= spec.signals().size()) throw DomainError("signal index out of range");
  if (sender.size() != spec.types().size()) throw DomainError("sender strategy needs one row per type");
  for (const auto& row : sender) {
    if (row.size() != spec.signals().size()) throw DomainError("sender strategy row has the wrong length");
    double s = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0) throw DomainError("sender strategy has a negative entry");
      s += p;
    }
    if (std::abs(s - 1.0) > kProbabilityTolerance) throw DomainError("sender strategy row does not sum to 1");
  }
  Belief b;
  b.over_types.resize(spec.types().size());
  double z = 0.0;
  for (std::size_t t = 0; t < spec.types().size(); ++t) {
    b.over_types[t] = sender[t][signal] * spec.prior()[t];
    z += b.over_types[t];
  }
  if (z > 0.0) {
    for (double& p : b.over_types) p /= z;
    b.on_path = true;
  } else {
    b.over_types = off_path_belief(spec, signal, rule);
    b.on_path = false;
  }
  return b;
}

Belief signal_posterior(const SignalingGameSpec& spec, const SenderMixedStrategy& sender,
                        const std::string& signal, OffPathRule rule) {
  return signal_posterior(spec, sender, spec.signal_index(signal), rule);
}

std::string to_string(PbeClass c) {
  switch (c) {
    case PbeClass::kPooling: return "pooling";
    case PbeClass::kSeparating: return "separating";
    case PbeClass::kHybrid: return "hybrid";
  }
  return "unknown";
}

SenderMixedStrategy as_mixed(const SignalingGameSpec& spec, const std::vector<std::size_t>& sender) {
  SenderMixedStrategy out(spec.types().size(), std::vector<double>(spec.signals().size(), 0.0));
  for (std::size_t t = 0; t < sender.size(); ++t) out[t].at(sender[t]) = 1.0;
  return out;
}

PbeClass classify(const SignalingGameSpec& spec, const std::vector<std::size_t>& sender) {
  (void)spec;
  std::set<std::size_t> used(sender.begin(), sender.end());
  if (used.size() == 1) return PbeClass::kPooling;
  if (used.size() == sender.size()) return PbeClass::kSeparating;
  return PbeClass::kHybrid;
}

std::vector<PBEResult> find_pbe(const SignalingGameSpec& spec, OffPathRule rule, std::size_t budget) {
  const std::size_t n_types = spec.types().size();
  const std::size_t n_signals = spec.signals().size();
  const std::size_t n_actions = spec.actions().size();
  const double count = std::pow(static_cast<double>(n_signals), static_cast<double>(n_types)) *
                       std::pow(static_cast<double>(n_actions), static_cast<double>(n_signals));
  if (count > static_cast<double>(budget)) throw EnumerationBudgetExceeded(count, budget);

  std::vector<PBEResult> out;
  std::vector<std::size_t> sender(n_types, 0);
  while (true) {
    const auto mixed = as_mixed(spec, sender);
    std::vector<Belief> beliefs;
    // Receiver actions that are best responses at each signal.
    std::vector<std::vector<std::size_t>> best(n_signals);
    for (std::size_t s = 0; s < n_signals; ++s) {
      beliefs.push_back(signal_posterior(spec, mixed, s, rule));
      const double top = receiver_best_response(spec, beliefs.back().over_types).value;
      for (std::size_t a = 0; a < n_actions; ++a)
        if (receiver_expected_utility(spec, beliefs.back().over_types, a) >= top - kEquilibriumTolerance)
          best[s].push_back(a);
    }

    // Receiver strategies that fail (iii) can never be kept, so only the
    // product of best-response sets is walked.
    std::vector<std::size_t> pick(n_signals, 0);
    while (true) {
      std::vector<std::size_t> receiver(n_signals);
      for (std::size_t s = 0; s < n_signals; ++s) receiver[s] = best[s][pick[s]];
      bool stable = true;
      for (std::size_t t = 0; t < n_types && stable; ++t) {
        const double current = spec.sender_utility(t, sender[t], receiver[sender[t]]);
        for (std::size_t s = 0; s < n_signals; ++s) {
          if (spec.sender_utility(t, s, receiver[s]) > current + kEquilibriumTolerance) {
            stable = false;
            break;
          }
        }
      }
      if (stable) out.push_back({sender, receiver, beliefs, classify(spec, sender)});

      std::size_t s = n_signals;
      bool carried = true;
      while (carried && s-- > 0) {
        if (++pick[s] < best[s].size()) carried = false;
        else pick[s] = 0;
      }
      if (carried) break;
    }

    std::size_t t = n_types;
    bool carried = true;
    while (carried && t-- > 0) {
      if (++sender[t] < n_signals) carried = false;
      else sender[t] = 0;
    }
    if (carried) break;
  }
  return out;
}

std::string verify_pbe(const SignalingGameSpec& spec, const PBEResult& candidate, OffPathRule rule) {
  const std::size_t n_types = spec.types().size();
  const std::size_t n_signals = spec.signals().size();
  if (candidate.sender.size() != n_types) return "sender strategy does not cover every type";
  if (candidate.receiver.size() != n_signals) return "receiver strategy does not cover every signal";
  if (candidate.beliefs.size() != n_signals) return "belief system does not cover every signal";

  const auto mixed = as_mixed(spec, candidate.sender);
  for (std::size_t s = 0; s < n_signals; ++s) {
    const Belief expected = signal_posterior(spec, mixed, s, rule);
    const Belief& got = candidate.beliefs[s];
    if (got.on_path != expected.on_path)
      return "signal '" + spec.signals()[s] + "' has the wrong on-path flag";
    for (std::size_t t = 0; t < n_types; ++t)
      if (std::abs(got.over_types[t] - expected.over_types[t]) > kEquilibriumTolerance)
        return "belief at signal '" + spec.signals()[s] + "' is not consistent";
    const double chosen = receiver_expected_utility(spec, expected.over_types, candidate.receiver[s]);
    for (std::size_t a = 0; a < spec.actions().size(); ++a)
      if (receiver_expected_utility(spec, expected.over_types, a) > chosen + kEquilibriumTolerance)
        return "receiver gains by deviating at signal '" + spec.signals()[s] + "'";
  }
  for (std::size_t t = 0; t < n_types; ++t) {
    const double current = spec.sender_utility(t, candidate.sender[t], candidate.receiver[candidate.sender[t]]);
    if (sender_optimal_signal(spec, t, candidate.receiver).value > current + kEquilibriumTolerance)
      return "sender type '" + spec.types()[t] + "' gains by deviating";
  }
  if (candidate.classification != classify(spec, candidate.sender)) return "classification mismatch";
  return {};
}

}  // namespace ztrust
