#pragma once

// Leader-follower commitment games. The leader picks a row (pure) or a row
// mix (mixed); the follower best-responds, breaking ties in the leader's
// favor (strong Stackelberg equilibrium).

#include <cstddef>
#include <string>
#include <vector>

#include "ztrust/matrix.hpp"
#include "ztrust/zero_sum.hpp"

namespace ztrust {

struct BimatrixGame {
  Matrix leader_payoff;
  Matrix follower_payoff;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  void validate() const;
  static BimatrixGame from(Matrix leader, Matrix follower);
};

enum class CommitmentMode { kPure, kMixed };
std::string to_string(CommitmentMode mode);
CommitmentMode parse_commitment_mode(const std::string& text);

struct SSEResult {
  MixedStrategy leader;
  std::size_t follower_action = 0;
  double leader_value = 0.0;
  double follower_value = 0.0;
};

SSEResult solve_stackelberg(const BimatrixGame& game, CommitmentMode mode);

// Follower's leader-favoring best response to a leader mix.
std::size_t follower_best_response(const BimatrixGame& game, const MixedStrategy& leader);

// max_i min_j leader_payoff(i, j).
double leader_pure_security_level(const BimatrixGame& game);
// Mixed maximin value of the leader's payoff matrix.
double leader_mixed_security_level(const BimatrixGame& game);

}  // namespace ztrust
