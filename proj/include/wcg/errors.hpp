#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace wcg {

// Raised when a game, profile or file violates a structural invariant.
// Carries the offending player/resource index when one is known.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what,
                            std::optional<std::size_t> player = std::nullopt,
                            std::optional<std::size_t> resource = std::nullopt)
      : std::invalid_argument(decorate(what, player, resource)),
        player_(player),
        resource_(resource) {}

  std::optional<std::size_t> player() const noexcept { return player_; }
  std::optional<std::size_t> resource() const noexcept { return resource_; }

 private:
  static std::string decorate(const std::string& what,
                              std::optional<std::size_t> player,
                              std::optional<std::size_t> resource) {
    std::string out = what;
    if (player) out += " [player " + std::to_string(*player) + "]";
    if (resource) out += " [resource " + std::to_string(*resource) + "]";
    return out;
  }

  std::optional<std::size_t> player_;
  std::optional<std::size_t> resource_;
};

// Argument outside the mathematical domain of a function.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exhaustive scan would exceed the configured profile cap.
class cap_exceeded : public std::runtime_error {
 public:
  cap_exceeded(const std::string& what, double requested, double cap)
      : std::runtime_error(what), requested_(requested), cap_(cap) {}

  double requested() const noexcept { return requested_; }
  double cap() const noexcept { return cap_; }

 private:
  double requested_;
  double cap_;
};

// Operation not defined for this combination of latency kinds.
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File could not be read or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wcg
