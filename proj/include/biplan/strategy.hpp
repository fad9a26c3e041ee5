#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biplan/backends.hpp"
#include "biplan/core.hpp"
#include "biplan/search.hpp"

namespace biplan {

enum class StrategyKind { Fwd, Back, Flip, FwdBack, FwdFlip, FwdFlipReason };

const char* to_string(StrategyKind s);
std::optional<StrategyKind> strategy_from_string(const std::string& name);

struct StrategyConfig {
  StrategyKind strategy = StrategyKind::Fwd;
  int max_attempts = 6;  // M; FwdFlipReason conventionally runs with M = 1
  double first_temperature = 0.0;
  std::optional<double> later_temperature;  // default 0.5 (graph/array), 0.4 (blocks)
  std::uint64_t direction_coin_seed = 0;
};

double default_later_temperature(DomainKind kind);

struct Transcript {
  int attempt = 0;  // sampling attempts are 1-based; setup calls use 0
  TemplateKind kind = TemplateKind::sampling;
  Direction direction = Direction::forward;
  Frame frame = Frame::original;
  double temperature = 0.0;
  std::string prompt;
  std::string response;
  bool parse_ok = true;
};

struct CandidateRecord {
  Plan plan;  // normalized: forward direction, original frame
  Frame sampled_frame = Frame::original;
  Direction sampled_direction = Direction::forward;
  int attempt = 0;
  bool gt_valid = false;
  std::optional<bool> gt_optimal;
};

struct StrategyOutcome {
  std::vector<CandidateRecord> candidates;
  std::optional<Plan> chosen;  // forward direction, original frame
  std::optional<int> chosen_candidate;
  bool self_verified_correct = false;
  PlanVerdict ground_truth;
  SearchCost search_cost;
  int parse_failures = 0;
  std::optional<Frame> reasoned_frame;
  std::string reason_rationale;
  std::vector<Transcript> transcripts;
};

// Backend failure with whatever the trial had produced so far.
struct StrategyAborted : BackendUnavailable {
  StrategyAborted(const std::string& what, StrategyOutcome partial_outcome)
      : BackendUnavailable(what), partial(std::move(partial_outcome)) {}
  StrategyOutcome partial;
};

// Eq. (1): reverse the action order and invert each action, mapping a
// forward plan in the flipped frame to a forward plan in the original frame
// (and, being an involution, vice versa).
Plan flip_back_plan(DomainKind kind, const Plan& plan);

// A backward plan in the original frame reversed into a forward plan.
Plan reverse_backward_plan(DomainKind kind, const Plan& plan);

// Frame/direction for one attempt. Fwd-Back and Fwd-Flip toss a fair coin per
// attempt; Fwd-Flip-Reason uses the reasoned frame for its single attempt.
std::pair<Frame, Direction> choose_frame(StrategyKind strategy, int attempt_index,
                                         std::uint64_t trial_seed, std::uint64_t coin_seed,
                                         std::optional<Frame> reasoned_frame);

// Whether the outcome counts as a planning success: optimality for graphs,
// validity elsewhere.
bool outcome_success(const Problem& problem, const StrategyOutcome& outcome);
bool candidate_correct(const Problem& problem, const CandidateRecord& candidate);

// Runs up to M attempts with the temperature schedule, normalizes candidates,
// self-verifies (all-at-once for graphs, per-candidate with early stop for
// arrays/blocks), grades the choice with the ground-truth verifier, and
// attaches the trial's search cost.
StrategyOutcome run_strategy(const Problem& problem, const StrategyConfig& config,
                             Backend& backend, std::uint64_t trial_seed);

}  // namespace biplan
