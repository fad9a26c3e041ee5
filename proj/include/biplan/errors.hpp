#pragma once

#include <stdexcept>
#include <string>

namespace biplan {

// Base for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An action's precondition does not hold in the given state.
struct IllegalAction : Error {
  using Error::Error;
};

// A generator exhausted its rejection budget; the parameters are infeasible.
struct GenerationExhausted : Error {
  using Error::Error;
};

// Statement text does not follow the expected grammar.
struct ParseError : Error {
  using Error::Error;
};

// A statement describes a physically impossible block arrangement.
struct InconsistentState : Error {
  using Error::Error;
};

// A blocks goal cannot be completed into a full state.
struct IncompleteGoal : Error {
  using Error::Error;
};

// A search exceeded its state-space cap.
struct StateSpaceOverflow : Error {
  using Error::Error;
};

// More candidate plans than option letters.
struct TooManyCandidates : Error {
  using Error::Error;
};

// The simulated backend cannot identify the request.
struct UnknownContext : Error {
  using Error::Error;
};

struct BackendUnavailable : Error {
  explicit BackendUnavailable(const std::string& what, double retry_after_s = 0.0)
      : Error(what), retry_after_seconds(retry_after_s) {}
  double retry_after_seconds;
};

struct MalformedResponse : Error {
  using Error::Error;
};

struct AuthError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct UnsortedEdges : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

}  // namespace biplan
