#pragma once

// Seeded random streams for the simulator.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform doubles are built from the top 53 bits of each draw, and
// categorical sampling walks the cumulative distribution directly, so no
// implementation-defined std:: distribution is involved and draws are
// identical across platforms.
//
// Per-entity streams are seeded with splitmix64(seed ^ fnv1a64(entity_id)),
// so an entity's draws depend only on the scenario seed and its own id.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace ztrust {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);
std::uint64_t entity_stream_seed(std::uint64_t scenario_seed, std::string_view entity_id);

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Index drawn from a probability vector. Never returns an index whose
  // weight is zero.
  std::size_t categorical(std::span<const double> probs);

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace ztrust
