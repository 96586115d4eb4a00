#pragma once

// Mixed-radix enumeration of pure profiles. Profiles are visited in
// lexicographic order of the choice vector (last player varies fastest), and
// the flat index of a profile is its rank in that order.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "wcg/errors.hpp"
#include "wcg/model.hpp"

namespace wcg {

inline constexpr double kDefaultProfileCap = 16777216.0;  // 2^24

inline std::vector<std::size_t> radices(const Game& g) {
  std::vector<std::size_t> r;
  r.reserve(g.num_players());
  for (const StrategySet& s : g.strategies()) r.push_back(s.size());
  return r;
}

inline void check_cap(double count, double cap, const std::string& what) {
  if (count <= cap) return;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s: %.0f profiles exceed the enumeration cap of %.0f; use local descent "
                "(wcg descend, or analyze --descend) or raise --cap / WCG_ENUM_CAP",
                what.c_str(), count, cap);
  throw cap_exceeded(buf, count, cap);
}

inline Profile profile_at(const std::vector<std::size_t>& radix, std::uint64_t index) {
  Profile p;
  p.choice.assign(radix.size(), 0);
  for (std::size_t i = radix.size(); i-- > 0;) {
    p.choice[i] = static_cast<std::size_t>(index % radix[i]);
    index /= radix[i];
  }
  return p;
}

// Advances p to the next profile; returns false after the last one.
inline bool next_profile(const std::vector<std::size_t>& radix, Profile& p) {
  for (std::size_t i = radix.size(); i-- > 0;) {
    if (++p.choice[i] < radix[i]) return true;
    p.choice[i] = 0;
  }
  return false;
}

inline unsigned worker_count(std::uint64_t total, unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::uint64_t kMinChunk = 4096;
  const std::uint64_t useful = std::max<std::uint64_t>(1, total / kMinChunk);
  return static_cast<unsigned>(std::min<std::uint64_t>(n, useful));
}

// Splits [0, total) into contiguous chunks, runs `body(begin, end, state)`
// on each (in parallel when worthwhile) with a fresh State, and returns the
// per-chunk states in index order so callers can reduce deterministically.
template <class State, class Body>
std::vector<State> run_chunks(std::uint64_t total, unsigned threads, Body&& body) {
  const unsigned workers = worker_count(total, threads);
  std::vector<State> states(workers);
  if (workers == 1) {
    body(std::uint64_t{0}, total, states[0]);
    return states;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min<std::uint64_t>(total, w * chunk);
    const std::uint64_t e = std::min<std::uint64_t>(total, b + chunk);
    pool.emplace_back([&, b, e, w] { body(b, e, states[w]); });
  }
  for (std::thread& t : pool) t.join();
  return states;
}

// Calls f(profile) for every flat index in [begin, end).
template <class F>
void for_each_profile(const std::vector<std::size_t>& radix, std::uint64_t begin,
                      std::uint64_t end, F&& f) {
  if (begin >= end) return;
  Profile p = profile_at(radix, begin);
  for (std::uint64_t k = begin; k < end; ++k) {
    f(static_cast<const Profile&>(p));
    next_profile(radix, p);
  }
}

}  // namespace wcg
