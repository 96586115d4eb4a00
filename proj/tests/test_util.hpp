#pragma once

#include <cstdint>

#include "wcg/generators.hpp"
#include "wcg/model.hpp"
#include "wcg/profile_space.hpp"

namespace wcg::test {

template <class F>
void each_profile(const Game& g, F&& f) {
  for_each_profile(radices(g), 0, static_cast<std::uint64_t>(g.profile_count()), f);
}

// The 200-game corpus shared by the potential-method and optimum checks:
// <= 3 players, <= 4 resources, d in 1..3, W in {1, 2, 4}.
inline Game corpus_game(std::uint64_t k) {
  static constexpr double kW[] = {1.0, 2.0, 4.0};
  const std::size_t players = 1 + k % 3;
  const std::size_t resources = 1 + (k / 3) % 4;
  const int d = 1 + static_cast<int>((k / 12) % 3);
  const double W = kW[(k / 36) % 3];
  const std::size_t strategies = 1 + (k / 5) % 3 + (resources > 1 ? 1 : 0);
  return random_game(1000 + k, players, resources, d, W, strategies);
}

}  // namespace wcg::test
