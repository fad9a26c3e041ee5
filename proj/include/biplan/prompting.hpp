#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biplan/core.hpp"

namespace biplan {

// ---------------------------------------------------------------------------
// Exemplars
// ---------------------------------------------------------------------------

struct GraphExemplar {
  Problem problem;
  std::vector<int> path;  // oracle node sequence, initial -> goal
};

struct GraphVerifyExemplar {
  Problem problem;
  std::vector<std::vector<int>> options;  // candidate node sequences
};

struct ArrayExemplar {
  ArrayState initial;
  ArrayState goal;
  std::vector<ArrayFn> plan;
  std::vector<ArrayState> steps;  // state after each plan step
};

struct ArrayVerifyExemplar {
  ArrayState initial;
  ArrayState desired;
  std::vector<ArrayFn> plan;
};

// Exemplar problems share the current problem's generation params but come
// from a dedicated seed stream, so they never leak the instance.
std::vector<GraphExemplar> make_graph_sampling_exemplars(const GraphProblemParams& params,
                                                         std::uint64_t seed, int count = 3);
std::vector<GraphVerifyExemplar> make_graph_verify_exemplars(const GraphProblemParams& params,
                                                             std::uint64_t seed, int count = 3);
std::vector<ArrayExemplar> make_array_sampling_exemplars(const ArrayProblemParams& params,
                                                         std::uint64_t seed, int count = 3);
std::vector<ArrayVerifyExemplar> make_array_verify_exemplars(const ArrayProblemParams& params,
                                                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Prompt builders (byte-deterministic)
// ---------------------------------------------------------------------------

std::string build_graph_sampling_prompt(const Problem& problem, Direction direction,
                                        const std::vector<GraphExemplar>& exemplars,
                                        const std::optional<std::string>& problem_text_override = {});

std::string build_graph_verification_prompt(const Problem& problem,
                                            const std::vector<GraphVerifyExemplar>& exemplars,
                                            const std::vector<std::vector<int>>& candidates);

std::string build_reorder_prompt(const std::string& flipped_graph_text);

std::string array_prompt_header(const std::vector<ArrayFn>& functions, int plan_length);

std::string build_array_sampling_prompt(const Problem& problem, Direction direction,
                                        const std::vector<ArrayExemplar>& exemplars);

std::string build_array_verification_prompt(const Problem& problem,
                                            const std::vector<ArrayVerifyExemplar>& exemplars,
                                            const std::vector<ArrayFn>& candidate);

std::string blocks_prompt_header();

std::string build_blocks_summarize_prompt(const Problem& problem);

std::string build_blocks_plan_prompt(const std::string& compact_init,
                                     const std::string& compact_goal, Direction direction);

std::string build_blocks_verification_prompt(const std::string& compact_init,
                                             const std::string& compact_goal,
                                             const std::vector<BlocksMove>& candidate);

// Zero-shot direction-preference prompt; marker tokens are forward/backward
// for graphs and forward/flipped for arrays and blocks.
std::string build_reason_prompt(const Problem& problem);

// Convenience dispatchers deriving exemplars from problem.gen_params and a
// prompt seed. Not available for blocks sampling, which is the two-step
// summarize/plan flow above.
std::string build_sampling_prompt(const Problem& problem, Direction direction,
                                  std::uint64_t prompt_seed,
                                  const std::optional<std::string>& problem_text_override = {});
std::string build_verification_prompt(const Problem& problem, const std::vector<Plan>& candidates,
                                      std::uint64_t prompt_seed);

// ---------------------------------------------------------------------------
// Response parsers (total over arbitrary text)
// ---------------------------------------------------------------------------

// Extracts the plan from the last matching marker: "Shortest Path: (...)",
// "Functions: [...]" or a [PLAN] ... [PLAN END] block. Empty on failure.
std::optional<ParsedPlan> parse_plan_output(const std::string& text, DomainKind kind,
                                            Direction direction, Frame frame);

struct Verdict {
  bool parsed = false;
  std::optional<int> chosen_index;  // graph: option picked
  bool correct = false;             // array/blocks
};

Verdict parse_verdict(const std::string& text, DomainKind kind, int num_candidates);

enum class DirectionPreference { forward, backward_or_flipped };

struct DirectionChoice {
  bool parsed = false;
  DirectionPreference choice = DirectionPreference::forward;
  std::string rationale_text;
};

DirectionChoice parse_direction_choice(const std::string& text);

// Step-3 lines of a reorder response; empty when the marker is missing.
std::optional<std::string> parse_reorder_output(const std::string& text);

struct StateSummary {
  std::string init_compact;
  std::string goal_compact;
};

std::optional<StateSummary> parse_summarize_output(const std::string& text);

// ---------------------------------------------------------------------------
// Output renderers shared with the simulated backend; every rendered output
// parses back through the matching parser.
// ---------------------------------------------------------------------------

std::string render_graph_plan_output(const std::vector<int>& nodes);
std::string render_array_plan_output(const std::vector<ArrayFn>& fns);
std::string render_blocks_plan_output(const std::vector<BlocksMove>& moves);
std::string render_summarize_output(const std::string& compact_init,
                                    const std::string& compact_goal);
std::string render_reorder_response(const Problem& original_problem);
std::string render_graph_verification_response(const Problem& problem,
                                               const std::vector<std::vector<int>>& options,
                                               std::optional<int> chosen);
std::string render_array_verification_response(const Problem& problem,
                                               const std::vector<ArrayFn>& candidate, bool correct);
std::string render_blocks_verification_response(const Problem& problem,
                                                const std::vector<BlocksMove>& candidate,
                                                bool correct);
std::string render_reason_response(DomainKind kind, DirectionPreference preference);

}  // namespace biplan
