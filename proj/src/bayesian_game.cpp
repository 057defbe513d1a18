#include "ztrust/bayesian_game.hpp"

#include <cmath>
#include <set>

#include "ztrust/error.hpp"
#include "ztrust/trust_core.hpp"
#include "ztrust/zero_sum.hpp"

namespace ztrust {

BayesianGameSpec::BayesianGameSpec(std::vector<BayesianPlayer> players,
                                   std::vector<double> joint_prior,
                                   std::vector<std::vector<double>> utility)
    : players_(std::move(players)), joint_prior_(std::move(joint_prior)), utility_(std::move(utility)) {
  if (players_.empty()) throw DomainError("bayesian game needs at least one player");
  std::size_t type_profiles = 1;
  for (const auto& p : players_) {
    if (p.types.empty()) throw DomainError("player '" + p.name + "' has no types");
    if (p.actions.empty()) throw DomainError("player '" + p.name + "' has no actions");
    std::set<std::string> t(p.types.begin(), p.types.end()), a(p.actions.begin(), p.actions.end());
    if (t.size() != p.types.size() || a.size() != p.actions.size())
      throw DomainError("player '" + p.name + "' has duplicate type or action labels");
    type_profiles *= p.types.size();
    action_profiles_ *= p.actions.size();
  }
  if (joint_prior_.size() != type_profiles)
    throw DomainError("joint prior has " + std::to_string(joint_prior_.size()) +
                      " entries, expected " + std::to_string(type_profiles));
  double sum = 0.0;
  for (double p : joint_prior_) {
    if (!std::isfinite(p) || p < 0.0) throw DomainError("joint prior has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) throw DomainError("joint prior does not sum to 1");
  if (utility_.size() != players_.size()) throw DomainError("utility table missing for some player");
  for (std::size_t i = 0; i < utility_.size(); ++i) {
    if (utility_[i].size() != type_profiles * action_profiles_)
      throw DomainError("utility table for player '" + players_[i].name +
                        "' does not cover the full action x type space");
    for (double u : utility_[i])
      if (!std::isfinite(u)) throw DomainError("non-finite utility for player '" + players_[i].name + "'");
  }
}

std::vector<double> BayesianGameSpec::independent_prior(
    const std::vector<BayesianPlayer>& players, const std::vector<std::vector<double>>& marginals) {
  if (marginals.size() != players.size()) throw DomainError("one marginal per player required");
  std::vector<double> joint{1.0};
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (marginals[i].size() != players[i].types.size())
      throw DomainError("marginal for player '" + players[i].name + "' has the wrong length");
    std::vector<double> next;
    next.reserve(joint.size() * marginals[i].size());
    for (double p : joint)
      for (double q : marginals[i]) next.push_back(p * q);
    joint = std::move(next);
  }
  return joint;
}

double BayesianGameSpec::marginal(std::size_t player, std::size_t type) const {
  double m = 0.0;
  for (std::size_t tp = 0; tp < joint_prior_.size(); ++tp)
    if (decode_types(tp)[player] == type) m += joint_prior_[tp];
  return m;
}

std::vector<std::size_t> BayesianGameSpec::decode_types(std::size_t type_profile) const {
  std::vector<std::size_t> out(players_.size());
  for (std::size_t i = players_.size(); i-- > 0;) {
    out[i] = type_profile % players_[i].types.size();
    type_profile /= players_[i].types.size();
  }
  return out;
}

std::vector<std::size_t> BayesianGameSpec::decode_actions(std::size_t action_profile) const {
  std::vector<std::size_t> out(players_.size());
  for (std::size_t i = players_.size(); i-- > 0;) {
    out[i] = action_profile % players_[i].actions.size();
    action_profile /= players_[i].actions.size();
  }
  return out;
}

std::size_t BayesianGameSpec::encode_actions(const std::vector<std::size_t>& actions) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < players_.size(); ++i) idx = idx * players_[i].actions.size() + actions[i];
  return idx;
}

std::size_t BayesianGameSpec::encode_types(const std::vector<std::size_t>& types) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < players_.size(); ++i) idx = idx * players_[i].types.size() + types[i];
  return idx;
}

BayesianGameSpec BayesianGameSpec::with_scaled_utility(std::size_t player, double factor) const {
  auto utility = utility_;
  for (double& u : utility.at(player)) u *= factor;
  return BayesianGameSpec(players_, joint_prior_, std::move(utility));
}

namespace {

void check_strategy(const BayesianGameSpec& spec, const BayesianStrategy& s) {
  if (s.actions.size() != spec.player_count()) throw DomainError("strategy does not cover every player");
  for (std::size_t i = 0; i < spec.player_count(); ++i) {
    const auto& p = spec.players()[i];
    if (s.actions[i].size() != p.types.size())
      throw DomainError("strategy does not cover every type of player '" + p.name + "'");
    for (std::size_t a : s.actions[i])
      if (a >= p.actions.size()) throw DomainError("strategy uses an illegal action for '" + p.name + "'");
  }
}

// Unnormalized interim utility of `player` of `type` playing `own_action`
// while everyone else follows `s`: sum over matching type profiles of p * u.
double weighted_utility(const BayesianGameSpec& spec, const BayesianStrategy& s,
                        const std::vector<std::vector<std::size_t>>& decoded, std::size_t player,
                        std::size_t type, std::size_t own_action) {
  double total = 0.0;
  std::vector<std::size_t> profile(spec.player_count());
  for (std::size_t tp = 0; tp < spec.type_profile_count(); ++tp) {
    const auto& types = decoded[tp];
    if (types[player] != type) continue;
    const double p = spec.prior(tp);
    if (p == 0.0) continue;
    for (std::size_t j = 0; j < spec.player_count(); ++j) profile[j] = s.actions[j][types[j]];
    profile[player] = own_action;
    total += p * spec.utility(player, spec.encode_actions(profile), tp);
  }
  return total;
}

std::vector<std::vector<std::size_t>> decode_all(const BayesianGameSpec& spec) {
  std::vector<std::vector<std::size_t>> out(spec.type_profile_count());
  for (std::size_t tp = 0; tp < out.size(); ++tp) out[tp] = spec.decode_types(tp);
  return out;
}

}  // namespace

double bayes_expected_utility(const BayesianGameSpec& spec, const BayesianStrategy& strategy,
                              std::size_t player, std::size_t type) {
  check_strategy(spec, strategy);
  if (player >= spec.player_count()) throw DomainError("player index out of range");
  if (type >= spec.players()[player].types.size()) throw DomainError("type index out of range");
  const double marginal = spec.marginal(player, type);
  if (!(marginal > 0.0))
    throw DomainError("unreachable type '" + spec.players()[player].types[type] + "' of player '" +
                      spec.players()[player].name + "' (zero marginal probability)");
  const auto decoded = decode_all(spec);
  return weighted_utility(spec, strategy, decoded, player, type, strategy.actions[player][type]) /
         marginal;
}

double bayesian_strategy_profile_count(const BayesianGameSpec& spec) {
  double count = 1.0;
  for (const auto& p : spec.players())
    count *= std::pow(static_cast<double>(p.actions.size()), static_cast<double>(p.types.size()));
  return count;
}

std::vector<BayesianStrategy> find_bne(const BayesianGameSpec& spec, std::size_t budget) {
  const double count = bayesian_strategy_profile_count(spec);
  if (count > static_cast<double>(budget)) throw EnumerationBudgetExceeded(count, budget);

  const auto decoded = decode_all(spec);
  std::vector<std::vector<double>> marginals(spec.player_count());
  for (std::size_t i = 0; i < spec.player_count(); ++i)
    for (std::size_t t = 0; t < spec.players()[i].types.size(); ++t)
      marginals[i].push_back(spec.marginal(i, t));

  BayesianStrategy s;
  for (const auto& p : spec.players()) s.actions.emplace_back(p.types.size(), 0);

  std::vector<BayesianStrategy> out;
  while (true) {
    bool stable = true;
    for (std::size_t i = 0; i < spec.player_count() && stable; ++i) {
      const auto& player = spec.players()[i];
      for (std::size_t t = 0; t < player.types.size() && stable; ++t) {
        if (!(marginals[i][t] > 0.0)) continue;
        const double m = marginals[i][t];
        const double current = weighted_utility(spec, s, decoded, i, t, s.actions[i][t]) / m;
        for (std::size_t a = 0; a < player.actions.size(); ++a) {
          if (a == s.actions[i][t]) continue;
          if (weighted_utility(spec, s, decoded, i, t, a) / m > current + kEquilibriumTolerance) {
            stable = false;
            break;
          }
        }
      }
    }
    if (stable) out.push_back(s);

    // Odometer: last player's last type is the least significant digit.
    std::size_t i = spec.player_count();
    bool carried = true;
    while (carried && i-- > 0) {
      auto& row = s.actions[i];
      std::size_t t = row.size();
      while (carried && t-- > 0) {
        if (++row[t] < spec.players()[i].actions.size()) carried = false;
        else row[t] = 0;
      }
    }
    if (carried) break;
  }
  return out;
}

}  // namespace ztrust
