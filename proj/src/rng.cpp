#include "ztrust/rng.hpp"

#include <stdexcept>

namespace ztrust {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t entity_stream_seed(std::uint64_t scenario_seed, std::string_view entity_id) {
  return splitmix64(scenario_seed ^ fnv1a64(entity_id));
}

std::size_t Rng::categorical(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("categorical draw from an empty distribution");
  const double u = uniform();
  double cumulative = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  if (last_positive == probs.size()) throw std::invalid_argument("categorical draw from an all-zero distribution");
  // Round-off left u above the final cumulative sum.
  return last_positive;
}

}  // namespace ztrust
