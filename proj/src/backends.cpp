#include "biplan/backends.hpp"

#include <algorithm>

#include "biplan/rng.hpp"
#include "biplan/search.hpp"

namespace biplan {

const char* to_string(TemplateKind k) {
  switch (k) {
    case TemplateKind::sampling: return "sampling";
    case TemplateKind::verification: return "verification";
    case TemplateKind::reorder: return "reorder";
    case TemplateKind::reason: return "reason";
    case TemplateKind::blocks_summarize: return "blocks_summarize";
  }
  return "?";
}

namespace {

void check_request(const CompletionRequest& request) {
  const bool has_user = std::any_of(request.messages.begin(), request.messages.end(),
                                    [](const Message& m) { return m.role == "user"; });
  if (!has_user) throw Error("completion request has no user message");
  if (request.temperature < 0.0 || request.temperature > 2.0)
    throw Error("temperature out of [0, 2]");
}

}  // namespace

std::string SimulatedPlanner::id() const { return "simulated"; }

namespace {

// Corruption stream key. Original-frame slots collapse to two variants (the
// temperature-0 attempt and the later-temperature attempts); flipped-frame
// attempts are fresh per attempt.
std::uint64_t corruption_slot(const CallContext& ctx) {
  std::uint64_t slot;
  if (ctx.frame == Frame::flipped) {
    slot = 100 + static_cast<std::uint64_t>(ctx.attempt_index);
  } else {
    slot = ctx.attempt_index <= 1 ? 0 : 1;
  }
  return slot * 4 + (ctx.direction == Direction::backward ? 2 : 0) +
         (ctx.frame == Frame::flipped ? 1 : 0);
}

std::string render_sampled_plan(const Problem& framed, const CallContext& ctx,
                                const std::vector<Action>& actions) {
  switch (framed.domain_kind) {
    case DomainKind::graph: {
      const State start = ctx.direction == Direction::forward ? framed.initial_state
                                                              : backward_start_state(framed);
      std::vector<int> nodes{std::get<int>(start)};
      for (const auto& a : actions) nodes.push_back(std::get<GraphMove>(a).to);
      return render_graph_plan_output(nodes);
    }
    case DomainKind::array: {
      std::vector<ArrayFn> fns;
      for (const auto& a : actions) fns.push_back(std::get<ArrayFn>(a));
      return render_array_plan_output(fns);
    }
    case DomainKind::blocks: {
      std::vector<BlocksMove> moves;
      for (const auto& a : actions) moves.push_back(std::get<BlocksMove>(a));
      return render_blocks_plan_output(moves);
    }
  }
  throw UnknownContext("sampled plan for unknown domain");
}

}  // namespace

std::string SimulatedPlanner::complete(const CompletionRequest& request,
                                       const CallContext& context) {
  check_request(request);
  if (!context.original_problem) throw UnknownContext("missing original problem");
  const Problem& original = *context.original_problem;
  const Problem& framed = context.framed_problem ? *context.framed_problem : original;

  switch (context.template_kind) {
    case TemplateKind::sampling: {
      const auto oracle = bfs_plan(framed, context.direction);
      if (!oracle.plan) {
        // Unreachable target; emit an empty-shaped answer in template format.
        return render_sampled_plan(framed, context, {});
      }
      double eps_dir = params_.eps_forward;
      if (context.direction == Direction::backward)
        eps_dir = std::min(1.0, params_.backward_bias * params_.eps_forward);
      if (context.frame == Frame::flipped) eps_dir += params_.flip_overhead;
      const double eps_eff =
          std::min(1.0, eps_dir * (1.0 + params_.temp_gain * request.temperature));

      Rng rng(mix_seed(context.trial_seed, seed_tag::sample_corruption, corruption_slot(context)));
      std::vector<Action> actions = oracle.plan->actions;
      State state = context.direction == Direction::forward ? framed.initial_state
                                                            : backward_start_state(framed);
      for (auto& action : actions) {
        const double u = rng.unit();
        const std::uint64_t pick = rng.next();  // always drawn; keeps streams aligned
        const auto moves = context.direction == Direction::forward
                               ? legal_actions(framed, state)
                               : inverse_legal_actions(framed, state);
        const State next = context.direction == Direction::forward
                               ? apply_action(framed, state, action)
                               : apply_inverse_action(framed, state, action);
        if (u < eps_eff) {
          std::vector<Action> alternatives;
          for (const auto& m : moves) {
            if (!actions_equal(m, action)) alternatives.push_back(m);
          }
          if (!alternatives.empty()) action = alternatives[pick % alternatives.size()];
        }
        state = next;  // the walk follows the oracle states
      }
      return render_sampled_plan(framed, context, actions);
    }

    case TemplateKind::verification: {
      Rng rng(mix_seed(context.trial_seed, seed_tag::verify_noise,
                       static_cast<std::uint64_t>(context.attempt_index)));
      const bool flip = rng.unit() < params_.verify_noise;
      if (original.domain_kind == DomainKind::graph) {
        // The verifier picks the last valid option of minimal length, exactly
        // like the worked examples; noise swaps that choice.
        BfsOracle oracle;
        std::optional<int> truth;
        int best_len = 0;
        std::vector<std::vector<int>> options;
        for (std::size_t i = 0; i < context.candidates.size(); ++i) {
          options.push_back(node_sequence(original, context.candidates[i]));
          const auto verdict = validate_plan(original, context.candidates[i], oracle);
          if (!verdict.valid) continue;
          const int len = static_cast<int>(context.candidates[i].actions.size());
          if (!truth || len <= best_len) {
            truth = static_cast<int>(i);
            best_len = len;
          }
        }
        std::optional<int> chosen = truth;
        if (flip) {
          const int n = static_cast<int>(context.candidates.size());
          if (!truth) {
            chosen = rng.below_int(n);
          } else if (n == 1) {
            chosen = std::nullopt;
          } else {
            int other = rng.below_int(n - 1);
            if (other >= *truth) ++other;
            chosen = other;
          }
        }
        return render_graph_verification_response(original, options, chosen);
      }
      if (context.candidates.size() != 1)
        throw UnknownContext("array/blocks verification takes one candidate");
      BfsOracle oracle;
      const bool truth = validate_plan(original, context.candidates[0], oracle).valid;
      const bool verdict = flip ? !truth : truth;
      if (original.domain_kind == DomainKind::array) {
        std::vector<ArrayFn> fns;
        for (const auto& a : context.candidates[0].actions) fns.push_back(std::get<ArrayFn>(a));
        return render_array_verification_response(original, fns, verdict);
      }
      std::vector<BlocksMove> moves;
      for (const auto& a : context.candidates[0].actions)
        moves.push_back(std::get<BlocksMove>(a));
      return render_blocks_verification_response(original, moves, verdict);
    }

    case TemplateKind::reorder:
      return render_reorder_response(original);

    case TemplateKind::blocks_summarize: {
      const auto& state = std::get<BlocksState>(framed.initial_state);
      return render_summarize_output(render_blocks_compact(state),
                                     render_goal_compact(framed.goal.clauses));
    }

    case TemplateKind::reason: {
      const SearchCost cost = search_cost(original);
      const auto cheaper = cost.difference <= 0 ? DirectionPreference::forward
                                                : DirectionPreference::backward_or_flipped;
      Rng rng(mix_seed(context.trial_seed, seed_tag::reason_noise));
      const bool undirected_graph =
          original.domain_kind == DomainKind::graph && !original.graph().directed;
      DirectionPreference answer;
      if (undirected_graph) {
        const bool match = rng.unit() < params_.reason_match_undirected;
        answer = match ? cheaper
                       : (cheaper == DirectionPreference::forward
                              ? DirectionPreference::backward_or_flipped
                              : DirectionPreference::forward);
      } else {
        answer = rng.unit() < 0.5 ? DirectionPreference::forward
                                  : DirectionPreference::backward_or_flipped;
      }
      return render_reason_response(original.domain_kind, answer);
    }
  }
  throw UnknownContext("unknown template kind");
}

}  // namespace biplan
