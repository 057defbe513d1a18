#pragma once

// Game specification documents: exactly one of matrix_game, bimatrix_game,
// bayesian_game, or signaling_game per file.

#include <string>
#include <variant>

#include "ztrust/bayesian_game.hpp"
#include "ztrust/signaling.hpp"
#include "ztrust/stackelberg.hpp"
#include "ztrust/zero_sum.hpp"

namespace ztrust {

inline constexpr const char* kGameSchema = "ztrust.game/1";

using GameSpec = std::variant<MatrixGame, BimatrixGame, BayesianGameSpec, SignalingGameSpec>;

std::string game_kind(const GameSpec& game);

// Throws ValidationError naming the offending section and key.
GameSpec parse_game(const std::string& text);
GameSpec load_game_file(const std::string& path);

}  // namespace ztrust
