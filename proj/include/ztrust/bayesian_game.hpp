#pragma once

// Finite Bayesian games with a joint type distribution and pure Bayesian
// Nash equilibrium enumeration.

#include <cstddef>
#include <string>
#include <vector>

namespace ztrust {

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

struct BayesianPlayer {
  std::string name;
  std::vector<std::string> types;
  std::vector<std::string> actions;
};

// Type profiles and action profiles are flattened in mixed radix with player 0
// as the most significant digit.
class BayesianGameSpec {
 public:
  // joint_prior: one entry per type profile.
  // utility[player]: (action profile index * type profile count + type profile index).
  BayesianGameSpec(std::vector<BayesianPlayer> players, std::vector<double> joint_prior,
                   std::vector<std::vector<double>> utility);

  // Builds the joint prior as a product of independent marginals.
  static std::vector<double> independent_prior(const std::vector<BayesianPlayer>& players,
                                               const std::vector<std::vector<double>>& marginals);

  const std::vector<BayesianPlayer>& players() const { return players_; }
  std::size_t player_count() const { return players_.size(); }
  std::size_t type_profile_count() const { return joint_prior_.size(); }
  std::size_t action_profile_count() const { return action_profiles_; }
  const std::vector<double>& joint_prior() const { return joint_prior_; }

  double prior(std::size_t type_profile) const { return joint_prior_[type_profile]; }
  double marginal(std::size_t player, std::size_t type) const;
  double utility(std::size_t player, std::size_t action_profile, std::size_t type_profile) const {
    return utility_[player][action_profile * joint_prior_.size() + type_profile];
  }

  std::vector<std::size_t> decode_types(std::size_t type_profile) const;
  std::vector<std::size_t> decode_actions(std::size_t action_profile) const;
  std::size_t encode_actions(const std::vector<std::size_t>& actions) const;
  std::size_t encode_types(const std::vector<std::size_t>& types) const;

  // Same game with one player's utilities multiplied by `factor`.
  BayesianGameSpec with_scaled_utility(std::size_t player, double factor) const;

 private:
  std::vector<BayesianPlayer> players_;
  std::vector<double> joint_prior_;
  std::vector<std::vector<double>> utility_;
  std::size_t action_profiles_ = 1;
};

// Pure strategy per player: type index -> action index.
struct BayesianStrategy {
  std::vector<std::vector<std::size_t>> actions;

  friend bool operator==(const BayesianStrategy&, const BayesianStrategy&) = default;
  friend auto operator<=>(const BayesianStrategy&, const BayesianStrategy&) = default;
};

// Interim expected utility of `player` of type `type` under `strategy`,
// conditioning the joint prior on that type.
double bayes_expected_utility(const BayesianGameSpec& spec, const BayesianStrategy& strategy,
                              std::size_t player, std::size_t type);

// Every pure strategy profile where no positive-probability type of any
// player gains more than 1e-9 by a unilateral action change. Returned in
// enumeration order (player 0's type 0 action is the most significant digit).
std::vector<BayesianStrategy> find_bne(const BayesianGameSpec& spec,
                                       std::size_t budget = kDefaultEnumerationBudget);

// Number of pure strategy profiles (as a double to survive overflow).
double bayesian_strategy_profile_count(const BayesianGameSpec& spec);

}  // namespace ztrust
