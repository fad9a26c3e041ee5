#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biplan/backends.hpp"
#include "biplan/domains.hpp"
#include "biplan/prompting.hpp"
#include "biplan/rng.hpp"
#include "biplan/search.hpp"
#include "biplan/strategy.hpp"

#include <json.hpp>

using namespace biplan;

namespace {

CompletionRequest request_at(double temperature) {
  CompletionRequest r;
  r.messages.push_back(Message{"user", "prompt text"});
  r.temperature = temperature;
  return r;
}

CallContext sampling_context(const Problem& original, const Problem& framed, Direction direction,
                             Frame frame, int attempt, std::uint64_t trial_seed) {
  CallContext ctx;
  ctx.template_kind = TemplateKind::sampling;
  ctx.original_problem = &original;
  ctx.framed_problem = &framed;
  ctx.direction = direction;
  ctx.frame = frame;
  ctx.attempt_index = attempt;
  ctx.trial_seed = trial_seed;
  return ctx;
}

}  // namespace

TEST_CASE("zero-noise sampling reproduces the oracle plan in template format") {
  SimulatedPlanner planner(SimulatedPlannerParams{0.0, 2.0, 2.5, 0.0, 0.0, 0.785});
  GraphProblemParams params;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Problem p = generate_graph_problem(params, seed);
    for (Direction direction : {Direction::forward, Direction::backward}) {
      const auto ctx = sampling_context(p, p, direction, Frame::original, 1, seed);
      const std::string out = planner.complete(request_at(0.0), ctx);
      const auto parsed = parse_plan_output(out, DomainKind::graph, direction, Frame::original);
      REQUIRE(parsed.has_value());
      const auto oracle = bfs_plan(p, direction);
      CHECK(plan_key(parsed->plan) == plan_key(*oracle.plan));
    }
  }
}

TEST_CASE("temperature-zero completion is deterministic per seed") {
  SimulatedPlanner planner;
  GraphProblemParams params;
  const Problem p = generate_graph_problem(params, 5);
  const auto ctx = sampling_context(p, p, Direction::forward, Frame::original, 1, 41);
  CHECK(planner.complete(request_at(0.0), ctx) == planner.complete(request_at(0.0), ctx));
  const auto ctx2 = sampling_context(p, p, Direction::forward, Frame::original, 1, 42);
  // Different trial seeds may corrupt differently; both calls stay stable.
  CHECK(planner.complete(request_at(0.0), ctx2) == planner.complete(request_at(0.0), ctx2));
}

TEST_CASE("simulated output always parses back") {
  SimulatedPlanner planner(SimulatedPlannerParams{0.3, 2.0, 2.5, 0.1, 0.0, 0.785});
  ArrayProblemParams array_params;
  array_params.function_set = {ArrayFn::cut, ArrayFn::repeat, ArrayFn::shift_left,
                               ArrayFn::shift_right};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Problem p = generate_array_problem(array_params, seed);
    for (int attempt = 1; attempt <= 3; ++attempt) {
      const auto ctx = sampling_context(p, p, Direction::forward, Frame::original, attempt, seed);
      const std::string out = planner.complete(request_at(attempt == 1 ? 0.0 : 0.5), ctx);
      CHECK(parse_plan_output(out, DomainKind::array, Direction::forward, Frame::original)
                .has_value());
    }
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Problem p = generate_blocks_problem(seed);
    const auto ctx = sampling_context(p, p, Direction::forward, Frame::original, 2, seed);
    const std::string out = planner.complete(request_at(0.4), ctx);
    CHECK(parse_plan_output(out, DomainKind::blocks, Direction::forward, Frame::original)
              .has_value());
  }
}

TEST_CASE("verification with zero noise reports the ground truth") {
  SimulatedPlanner planner(SimulatedPlannerParams{0.1, 2.0, 2.5, 0.0, 0.0, 0.785});
  GraphProblemParams params;
  const Problem p = generate_graph_problem(params, 9);
  const auto oracle_plan = bfs_plan(p, Direction::forward).plan;
  REQUIRE(oracle_plan.has_value());

  Plan wrong = *oracle_plan;
  std::get<GraphMove>(wrong.actions[1]).to = (std::get<GraphMove>(wrong.actions[1]).to + 1) % 12;

  CallContext ctx;
  ctx.template_kind = TemplateKind::verification;
  ctx.original_problem = &p;
  ctx.trial_seed = 77;
  ctx.candidates = {wrong, *oracle_plan};
  const std::string out = planner.complete(request_at(0.0), ctx);
  const Verdict verdict = parse_verdict(out, DomainKind::graph, 2);
  REQUIRE(verdict.parsed);
  CHECK(verdict.chosen_index == 1);
}

TEST_CASE("verify noise flips verdicts at roughly the configured rate") {
  SimulatedPlanner planner(SimulatedPlannerParams{0.0, 2.0, 2.5, 0.2, 0.0, 0.785});
  ArrayProblemParams params;
  params.function_set = {ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::reverse,
                         ArrayFn::swap};
  int flipped = 0;
  const int trials = 400;
  for (int i = 0; i < trials; ++i) {
    const Problem p = generate_array_problem(params, 1000 + i);
    const auto plan = bfs_plan(p, Direction::forward).plan;
    REQUIRE(plan.has_value());
    CallContext ctx;
    ctx.template_kind = TemplateKind::verification;
    ctx.original_problem = &p;
    ctx.trial_seed = 5000 + i;
    ctx.attempt_index = 1;
    ctx.candidates = {*plan};
    const Verdict verdict =
        parse_verdict(planner.complete(request_at(0.0), ctx), DomainKind::array, 1);
    if (!(verdict.parsed && verdict.correct)) ++flipped;
  }
  const double rate = static_cast<double>(flipped) / trials;
  CHECK(rate > 0.1);
  CHECK(rate < 0.3);
}

TEST_CASE("reorder responses are exact for any directed problem") {
  SimulatedPlanner planner;
  GraphProblemParams params;
  params.directed = true;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Problem p = generate_graph_problem(params, seed);
    const Problem flipped = flip_problem(p);
    CallContext ctx;
    ctx.template_kind = TemplateKind::reorder;
    ctx.original_problem = &p;
    ctx.framed_problem = &flipped;
    ctx.trial_seed = seed;
    const auto step3 = parse_reorder_output(planner.complete(request_at(0.0), ctx));
    REQUIRE(step3.has_value());
    // Every flipped edge appears under its source line.
    for (const auto& [u, v] : flipped.graph().edges) {
      const std::string line_start = "Node " + std::to_string(u) + " points to";
      const auto pos = step3->find(line_start);
      REQUIRE(pos != std::string::npos);
      const auto eol = step3->find('\n', pos);
      const std::string line = step3->substr(pos, eol - pos);
      CHECK(line.find(std::to_string(v)) != std::string::npos);
    }
  }
}

TEST_CASE("backward bias leaves forward sampling byte-identical and weakly hurts backward") {
  GraphProblemParams params;
  SimulatedPlanner low(SimulatedPlannerParams{0.1, 2.0, 2.5, 0.0, 0.0, 0.785});
  SimulatedPlanner high(SimulatedPlannerParams{0.1, 8.0, 2.5, 0.0, 0.0, 0.785});
  BfsOracle oracle;
  int low_ok = 0;
  int high_ok = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Problem p = generate_graph_problem(params, seed);
    const auto fwd_ctx = sampling_context(p, p, Direction::forward, Frame::original, 2, seed);
    CHECK(low.complete(request_at(0.5), fwd_ctx) == high.complete(request_at(0.5), fwd_ctx));

    const auto back_ctx = sampling_context(p, p, Direction::backward, Frame::original, 2, seed);
    for (auto* planner : {&low, &high}) {
      const std::string out = planner->complete(request_at(0.5), back_ctx);
      const auto parsed =
          parse_plan_output(out, DomainKind::graph, Direction::backward, Frame::original);
      REQUIRE(parsed.has_value());
      const Plan normalized = reverse_backward_plan(DomainKind::graph, parsed->plan);
      const bool ok = validate_plan(p, normalized, oracle).valid;
      (planner == &low ? low_ok : high_ok) += ok ? 1 : 0;
    }
  }
  CHECK(high_ok <= low_ok);
}

TEST_CASE("reason answers track the cheaper direction on undirected graphs") {
  SimulatedPlanner planner;
  GraphProblemParams params;
  int matches = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    const Problem p = generate_graph_problem(params, 40000 + i);
    CallContext ctx;
    ctx.template_kind = TemplateKind::reason;
    ctx.original_problem = &p;
    ctx.trial_seed = 90000 + i;
    const DirectionChoice choice =
        parse_direction_choice(planner.complete(request_at(0.0), ctx));
    REQUIRE(choice.parsed);
    const SearchCost cost = search_cost(p);
    const auto cheaper = cost.difference <= 0 ? DirectionPreference::forward
                                              : DirectionPreference::backward_or_flipped;
    if (choice.choice == cheaper) ++matches;
  }
  const double rate = static_cast<double>(matches) / trials;
  CHECK(rate > 0.75);
  CHECK(rate < 0.82);
}

TEST_CASE("request validation") {
  SimulatedPlanner planner;
  GraphProblemParams params;
  const Problem p = generate_graph_problem(params, 2);
  const auto ctx = sampling_context(p, p, Direction::forward, Frame::original, 1, 2);
  CompletionRequest no_user;
  no_user.messages.push_back(Message{"system", "hi"});
  CHECK_THROWS_AS(planner.complete(no_user, ctx), Error);
  CHECK_THROWS_AS(planner.complete(request_at(3.0), ctx), Error);
  CallContext empty;
  CHECK_THROWS_AS(planner.complete(request_at(0.0), empty), UnknownContext);
}

TEST_CASE("chat completion body carries the request verbatim") {
  HttpEndpointConfig config;
  config.base_url = "https://example.test";
  config.model_id = "gpt-4o";
  CompletionRequest request;
  request.messages.push_back(Message{"user", "hello"});
  request.temperature = 0.7;
  const auto body = nlohmann::json::parse(chat_completion_body(request, config));
  CHECK(body["model"] == "gpt-4o");
  CHECK(body["temperature"] == 0.7);
  REQUIRE(body["messages"].size() == 1);
  CHECK(body["messages"][0]["role"] == "user");
  CHECK(body["messages"][0]["content"] == "hello");
  CHECK_FALSE(body.contains("max_tokens"));

  config.system_message = "be terse";
  config.max_tokens = 512;
  const auto with_extras = nlohmann::json::parse(chat_completion_body(request, config));
  CHECK(with_extras["messages"].size() == 2);
  CHECK(with_extras["messages"][0]["role"] == "system");
  CHECK(with_extras["max_tokens"] == 512);
}

TEST_CASE("chat completion parsing maps malformed bodies to errors") {
  CHECK(parse_chat_completion(
            R"({"choices":[{"message":{"role":"assistant","content":"hi"}}]})") == "hi");
  CHECK_THROWS_AS(parse_chat_completion("not json"), MalformedResponse);
  CHECK_THROWS_AS(parse_chat_completion(R"({"choices":[]})"), MalformedResponse);
  CHECK_THROWS_AS(parse_chat_completion(R"({"choices":[{"message":{}}]})"), MalformedResponse);
}

TEST_CASE("http backend refuses to run without a key") {
  HttpEndpointConfig config;
  config.base_url = "https://example.test";
  config.api_key_env = "BIPLAN_TEST_KEY_THAT_DOES_NOT_EXIST";
  HttpBackend backend(config);
  CompletionRequest request;
  request.messages.push_back(Message{"user", "hello"});
  CallContext ctx;
  CHECK_THROWS_AS(backend.complete(request, ctx), AuthError);
}
