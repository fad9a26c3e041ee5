#include "biplan/strategy.hpp"

#include <algorithm>

#include "biplan/domains.hpp"
#include "biplan/prompting.hpp"
#include "biplan/rng.hpp"

namespace biplan {

const char* to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::Fwd: return "Fwd";
    case StrategyKind::Back: return "Back";
    case StrategyKind::Flip: return "Flip";
    case StrategyKind::FwdBack: return "Fwd-Back";
    case StrategyKind::FwdFlip: return "Fwd-Flip";
    case StrategyKind::FwdFlipReason: return "Fwd-Flip-Reason";
  }
  return "?";
}

std::optional<StrategyKind> strategy_from_string(const std::string& name) {
  for (StrategyKind s : {StrategyKind::Fwd, StrategyKind::Back, StrategyKind::Flip,
                         StrategyKind::FwdBack, StrategyKind::FwdFlip,
                         StrategyKind::FwdFlipReason}) {
    if (name == to_string(s)) return s;
  }
  // Tolerate the undecorated spellings.
  if (name == "FwdBack") return StrategyKind::FwdBack;
  if (name == "FwdFlip") return StrategyKind::FwdFlip;
  if (name == "FwdFlipReason") return StrategyKind::FwdFlipReason;
  return std::nullopt;
}

double default_later_temperature(DomainKind kind) {
  return kind == DomainKind::blocks ? 0.4 : 0.5;
}

Plan flip_back_plan(DomainKind kind, const Plan& plan) {
  if (plan.direction != Direction::forward)
    throw Error("flip_back_plan expects a forward plan");
  Plan out;
  // An involution: the result lives in the other frame.
  out.frame = plan.frame == Frame::flipped ? Frame::original : Frame::flipped;
  out.direction = Direction::forward;
  for (auto it = plan.actions.rbegin(); it != plan.actions.rend(); ++it) {
    out.actions.push_back(invert_action(kind, *it));
  }
  return out;
}

Plan reverse_backward_plan(DomainKind kind, const Plan& plan) {
  if (plan.direction != Direction::backward || plan.frame != Frame::original)
    throw Error("reverse_backward_plan expects a backward plan in the original frame");
  Plan out;
  out.frame = Frame::original;
  out.direction = Direction::forward;
  for (auto it = plan.actions.rbegin(); it != plan.actions.rend(); ++it) {
    out.actions.push_back(invert_action(kind, *it));
  }
  return out;
}

std::pair<Frame, Direction> choose_frame(StrategyKind strategy, int attempt_index,
                                         std::uint64_t trial_seed, std::uint64_t coin_seed,
                                         std::optional<Frame> reasoned_frame) {
  switch (strategy) {
    case StrategyKind::Fwd: return {Frame::original, Direction::forward};
    case StrategyKind::Back: return {Frame::original, Direction::backward};
    case StrategyKind::Flip: return {Frame::flipped, Direction::forward};
    case StrategyKind::FwdBack:
    case StrategyKind::FwdFlip: {
      Rng rng(mix_seed(trial_seed, seed_tag::direction_coin, coin_seed,
                       static_cast<std::uint64_t>(attempt_index)));
      const bool heads = rng.unit() < 0.5;
      if (heads) return {Frame::original, Direction::forward};
      return strategy == StrategyKind::FwdBack
                 ? std::pair<Frame, Direction>{Frame::original, Direction::backward}
                 : std::pair<Frame, Direction>{Frame::flipped, Direction::forward};
    }
    case StrategyKind::FwdFlipReason:
      return {reasoned_frame.value_or(Frame::original), Direction::forward};
  }
  return {Frame::original, Direction::forward};
}

bool candidate_correct(const Problem& problem, const CandidateRecord& candidate) {
  if (problem.domain_kind == DomainKind::graph)
    return candidate.gt_valid && candidate.gt_optimal.value_or(false);
  return candidate.gt_valid;
}

bool outcome_success(const Problem& problem, const StrategyOutcome& outcome) {
  if (!outcome.chosen) return false;
  if (problem.domain_kind == DomainKind::graph)
    return outcome.ground_truth.valid && outcome.ground_truth.optimal.value_or(false);
  return outcome.ground_truth.valid;
}

namespace {

constexpr std::uint64_t kSamplePromptTag = 0x10;
constexpr std::uint64_t kVerifyPromptTag = 0x11;

struct Runner {
  const Problem& problem;
  const StrategyConfig& config;
  Backend& backend;
  std::uint64_t trial_seed;

  StrategyOutcome outcome;
  BfsOracle oracle;
  std::optional<Problem> flipped;
  std::optional<std::string> reorder_text;  // directed graphs, flipped frame
  std::optional<StateSummary> summaries[2];  // per frame

  Problem& flipped_problem() {
    if (!flipped) flipped = flip_problem(problem);
    return *flipped;
  }

  std::string call(TemplateKind kind, const Problem* framed, Direction direction, Frame frame,
                   int attempt, double temperature, const std::string& prompt,
                   const std::vector<Plan>& candidates = {}) {
    CallContext ctx;
    ctx.template_kind = kind;
    ctx.original_problem = &problem;
    ctx.framed_problem = framed;
    ctx.direction = direction;
    ctx.frame = frame;
    ctx.attempt_index = attempt;
    ctx.trial_seed = trial_seed;
    ctx.candidates = candidates;
    CompletionRequest request;
    request.messages.push_back(Message{"user", prompt});
    request.temperature = temperature;
    request.seed = trial_seed;
    std::string response;
    try {
      response = backend.complete(request, ctx);
    } catch (const BackendUnavailable& e) {
      Transcript failed{attempt, kind, direction, frame, temperature, prompt, "", false};
      outcome.transcripts.push_back(std::move(failed));
      throw StrategyAborted(e.what(), outcome);
    }
    outcome.transcripts.push_back(
        Transcript{attempt, kind, direction, frame, temperature, prompt, response, true});
    return response;
  }

  void mark_last_parse_failed() { outcome.transcripts.back().parse_ok = false; }

  // Blocks problems go through the summarize step once per frame; the compact
  // strings feed the plan prompt (and come from the backend, so live mode can
  // inject its own completion of a partial goal).
  const StateSummary& summary_for(Frame frame, const Problem& framed) {
    const int slot = frame == Frame::flipped ? 1 : 0;
    if (summaries[slot]) return *summaries[slot];
    const std::string prompt = build_blocks_summarize_prompt(framed);
    const std::string response =
        call(TemplateKind::blocks_summarize, &framed, Direction::forward, frame, 0, 0.0, prompt);
    auto parsed = parse_summarize_output(response);
    if (!parsed) {
      mark_last_parse_failed();
      parsed = StateSummary{render_blocks_compact(std::get<BlocksState>(framed.initial_state)),
                            render_goal_compact(framed.goal.clauses)};
    }
    summaries[slot] = *parsed;
    return *summaries[slot];
  }

  // Directed flipped graphs sample against the backend's reordered text.
  const std::string& reordered_text() {
    if (reorder_text) return *reorder_text;
    const Problem& framed = flipped_problem();
    const std::string prompt = build_reorder_prompt(render_flipped_incident(problem));
    const std::string response =
        call(TemplateKind::reorder, &framed, Direction::forward, Frame::flipped, 0, 0.0, prompt);
    auto parsed = parse_reorder_output(response);
    if (!parsed) {
      mark_last_parse_failed();
      parsed = render_incident(framed);
    }
    reorder_text = *parsed;
    return *reorder_text;
  }

  std::optional<Frame> reasoned_direction() {
    const std::string prompt = build_reason_prompt(problem);
    const std::string response =
        call(TemplateKind::reason, &problem, Direction::forward, Frame::original, 0, 0.0, prompt);
    const DirectionChoice choice = parse_direction_choice(response);
    outcome.reason_rationale = choice.rationale_text;
    if (!choice.parsed) {
      mark_last_parse_failed();
      return Frame::original;  // conservative default
    }
    return choice.choice == DirectionPreference::forward ? Frame::original : Frame::flipped;
  }

  std::optional<Plan> sample_attempt(int attempt, Frame frame, Direction direction,
                                     double temperature) {
    const Problem& framed = frame == Frame::flipped ? flipped_problem() : problem;
    std::string prompt;
    if (problem.domain_kind == DomainKind::blocks) {
      const StateSummary& summary = summary_for(frame, framed);
      prompt = build_blocks_plan_prompt(summary.init_compact, summary.goal_compact, direction);
    } else if (problem.domain_kind == DomainKind::graph && frame == Frame::flipped &&
               problem.graph().directed) {
      prompt = build_sampling_prompt(framed, direction, mix_seed(trial_seed, kSamplePromptTag),
                                     reordered_text());
    } else {
      prompt = build_sampling_prompt(framed, direction, mix_seed(trial_seed, kSamplePromptTag));
    }
    const std::string response =
        call(TemplateKind::sampling, &framed, direction, frame, attempt, temperature, prompt);
    const auto parsed = parse_plan_output(response, problem.domain_kind, direction, frame);
    if (!parsed) {
      mark_last_parse_failed();
      ++outcome.parse_failures;
      return std::nullopt;
    }
    // Normalize to a forward plan in the original frame.
    if (frame == Frame::flipped) return flip_back_plan(problem.domain_kind, parsed->plan);
    if (direction == Direction::backward)
      return reverse_backward_plan(problem.domain_kind, parsed->plan);
    return parsed->plan;
  }

  bool verify_single(int attempt, const Plan& plan) {
    const std::string prompt =
        build_verification_prompt(problem, {plan}, mix_seed(trial_seed, kVerifyPromptTag));
    const std::string response = call(TemplateKind::verification, &problem, Direction::forward,
                                      Frame::original, attempt, 0.0, prompt, {plan});
    const Verdict verdict = parse_verdict(response, problem.domain_kind, 1);
    if (!verdict.parsed) mark_last_parse_failed();
    return verdict.parsed && verdict.correct;  // unparseable counts as incorrect
  }

  std::optional<int> verify_all(const std::vector<Plan>& unique_plans) {
    const std::string prompt = build_verification_prompt(problem, unique_plans,
                                                         mix_seed(trial_seed, kVerifyPromptTag));
    const std::string response = call(TemplateKind::verification, &problem, Direction::forward,
                                      Frame::original, 0, 0.0, prompt, unique_plans);
    const Verdict verdict =
        parse_verdict(response, problem.domain_kind, static_cast<int>(unique_plans.size()));
    if (!verdict.parsed) mark_last_parse_failed();
    return verdict.chosen_index;
  }

  CandidateRecord grade(const Plan& plan, Frame frame, Direction direction, int attempt) {
    CandidateRecord record;
    record.plan = plan;
    record.sampled_frame = frame;
    record.sampled_direction = direction;
    record.attempt = attempt;
    const PlanVerdict verdict = validate_plan(problem, plan, oracle);
    record.gt_valid = verdict.valid;
    record.gt_optimal = verdict.optimal;
    return record;
  }

  StrategyOutcome run() {
    outcome.search_cost = search_cost(problem);
    const double later =
        config.later_temperature.value_or(default_later_temperature(problem.domain_kind));

    std::optional<Frame> reasoned;
    if (config.strategy == StrategyKind::FwdFlipReason) {
      reasoned = reasoned_direction();
      outcome.reasoned_frame = reasoned;
    }

    for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
      const auto [frame, direction] = choose_frame(config.strategy, attempt, trial_seed,
                                                   config.direction_coin_seed, reasoned);
      const double temperature = attempt == 1 ? config.first_temperature : later;
      const auto plan = sample_attempt(attempt, frame, direction, temperature);
      if (!plan) continue;
      outcome.candidates.push_back(grade(*plan, frame, direction, attempt));

      if (problem.domain_kind != DomainKind::graph) {
        // Verify each candidate as soon as it is sampled; stop at the first
        // plan the verifier accepts.
        if (verify_single(attempt, *plan)) {
          outcome.chosen = *plan;
          outcome.chosen_candidate = static_cast<int>(outcome.candidates.size()) - 1;
          outcome.self_verified_correct = true;
          break;
        }
      }
    }

    if (problem.domain_kind == DomainKind::graph) {
      // All unique candidates are verified together after the M attempts.
      std::vector<Plan> unique_plans;
      std::vector<int> candidate_of;
      for (std::size_t i = 0; i < outcome.candidates.size(); ++i) {
        const std::string key = plan_key(outcome.candidates[i].plan);
        const bool seen = std::any_of(unique_plans.begin(), unique_plans.end(),
                                      [&](const Plan& p) { return plan_key(p) == key; });
        if (!seen) {
          unique_plans.push_back(outcome.candidates[i].plan);
          candidate_of.push_back(static_cast<int>(i));
        }
      }
      if (!unique_plans.empty()) {
        const auto chosen = verify_all(unique_plans);
        if (chosen) {
          outcome.chosen = unique_plans[*chosen];
          outcome.chosen_candidate = candidate_of[*chosen];
          outcome.self_verified_correct = true;
        }
      }
    }

    if (outcome.chosen) {
      outcome.ground_truth = validate_plan(problem, *outcome.chosen, oracle);
    } else {
      outcome.ground_truth.valid = false;
      outcome.ground_truth.failure_step = 0;
      outcome.ground_truth.reason = "no plan selected";
    }
    return outcome;
  }
};

}  // namespace

StrategyOutcome run_strategy(const Problem& problem, const StrategyConfig& config,
                             Backend& backend, std::uint64_t trial_seed) {
  if (config.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  Runner runner{problem, config, backend, trial_seed, {}, {}, {}, {}, {}};
  return runner.run();
}

}  // namespace biplan
