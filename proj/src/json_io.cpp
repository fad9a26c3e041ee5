#include "biplan/json_io.hpp"

#include <algorithm>

namespace biplan {

namespace {

DomainKind domain_from_string(const std::string& s) {
  if (s == "graph") return DomainKind::graph;
  if (s == "array") return DomainKind::array;
  if (s == "blocks") return DomainKind::blocks;
  throw ParseError("unknown domain kind: " + s);
}

Frame frame_from_string(const std::string& s) {
  if (s == "original") return Frame::original;
  if (s == "flipped") return Frame::flipped;
  throw ParseError("unknown frame: " + s);
}

Direction direction_from_string(const std::string& s) {
  if (s == "forward") return Direction::forward;
  if (s == "backward") return Direction::backward;
  throw ParseError("unknown direction: " + s);
}

}  // namespace

Json to_json(const Action& action, DomainKind kind) {
  switch (kind) {
    case DomainKind::graph: {
      const auto& m = std::get<GraphMove>(action);
      return Json{{"from", m.from}, {"to", m.to}};
    }
    case DomainKind::array:
      return Json(array_fn_name(std::get<ArrayFn>(action)));
    case DomainKind::blocks: {
      const auto& m = std::get<BlocksMove>(action);
      Json j;
      switch (m.kind) {
        case BlocksMoveKind::pick_up: j["kind"] = "pick_up"; break;
        case BlocksMoveKind::put_down: j["kind"] = "put_down"; break;
        case BlocksMoveKind::stack: j["kind"] = "stack"; break;
        case BlocksMoveKind::unstack: j["kind"] = "unstack"; break;
      }
      j["block"] = block_name(m.block);
      if (m.target) j["target"] = block_name(*m.target);
      return j;
    }
  }
  return Json();
}

std::optional<Action> action_from_json(const Json& j, DomainKind kind) {
  try {
    switch (kind) {
      case DomainKind::graph:
        return GraphMove{j.at("from").get<int>(), j.at("to").get<int>()};
      case DomainKind::array: {
        const auto f = array_fn_from_name(j.get<std::string>());
        if (!f) return std::nullopt;
        return *f;
      }
      case DomainKind::blocks: {
        BlocksMove m;
        const std::string kind_name = j.at("kind").get<std::string>();
        if (kind_name == "pick_up") m.kind = BlocksMoveKind::pick_up;
        else if (kind_name == "put_down") m.kind = BlocksMoveKind::put_down;
        else if (kind_name == "stack") m.kind = BlocksMoveKind::stack;
        else if (kind_name == "unstack") m.kind = BlocksMoveKind::unstack;
        else return std::nullopt;
        const auto b = block_from_name(j.at("block").get<std::string>());
        if (!b) return std::nullopt;
        m.block = *b;
        if (j.contains("target")) {
          const auto t = block_from_name(j.at("target").get<std::string>());
          if (!t) return std::nullopt;
          m.target = *t;
        }
        return m;
      }
    }
  } catch (const Json::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

Json to_json(const State& state) {
  if (const auto* node = std::get_if<int>(&state)) return Json{{"node", *node}};
  if (const auto* arr = std::get_if<ArrayState>(&state)) return Json{{"array", *arr}};
  const auto& bs = std::get<BlocksState>(state);
  Json j;
  Json stacks = Json::array();
  for (const auto& stack : bs.stacks) {
    Json column = Json::array();
    for (Block b : stack) column.push_back(block_name(b));
    stacks.push_back(column);
  }
  j["stacks"] = stacks;
  if (bs.holding) j["holding"] = block_name(*bs.holding);
  return j;
}

Json to_json(const Goal& goal) {
  Json j;
  if (goal.at_node) j["at_node"] = *goal.at_node;
  if (goal.equals) j["equals"] = *goal.equals;
  if (!goal.clauses.empty()) {
    Json clauses = Json::array();
    for (const auto& c : goal.clauses) {
      Json clause;
      clause["block"] = block_name(c.block);
      if (c.support) clause["on"] = block_name(*c.support);
      else clause["on_table"] = true;
      clauses.push_back(clause);
    }
    j["clauses"] = clauses;
  }
  return j;
}

Json to_json(const Plan& plan, DomainKind kind) {
  Json actions = Json::array();
  for (const auto& a : plan.actions) actions.push_back(to_json(a, kind));
  return Json{{"direction", to_string(plan.direction)},
              {"frame", to_string(plan.frame)},
              {"actions", actions}};
}

std::optional<Plan> plan_from_json(const Json& j, DomainKind kind) {
  try {
    Plan plan;
    plan.direction = direction_from_string(j.at("direction").get<std::string>());
    plan.frame = frame_from_string(j.at("frame").get<std::string>());
    for (const auto& item : j.at("actions")) {
      const auto action = action_from_json(item, kind);
      if (!action) return std::nullopt;
      plan.actions.push_back(*action);
    }
    return plan;
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

Json to_json(const PlanVerdict& verdict) {
  Json j;
  j["valid"] = verdict.valid;
  if (verdict.optimal) j["optimal"] = *verdict.optimal;
  if (verdict.failure_step) j["failure_step"] = *verdict.failure_step;
  j["reason"] = verdict.reason;
  return j;
}

Json to_json(const SearchCost& cost) {
  return Json{{"forward_steps", cost.forward_steps},
              {"backward_steps", cost.backward_steps},
              {"difference", cost.difference}};
}

Json to_json(const Problem& problem) {
  Json j;
  j["domain_kind"] = to_string(problem.domain_kind);
  j["direction_frame"] = to_string(problem.direction_frame);
  j["seed"] = problem.seed;
  j["t_max"] = problem.t_max;
  j["initial_state"] = to_json(problem.initial_state);
  j["goal"] = to_json(problem.goal);
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const Graph& g = problem.graph();
      Json edges = Json::array();
      for (const auto& [u, v] : g.edges) edges.push_back(Json::array({u, v}));
      j["graph"] = Json{{"n", g.n}, {"directed", g.directed}, {"edges", edges}};
      if (const auto* params = std::get_if<GraphProblemParams>(&problem.gen_params)) {
        j["params"] = Json{{"n", params->n},
                           {"rho", params->rho},
                           {"directed", params->directed},
                           {"required_path_nodes", params->required_path_nodes},
                           {"max_rejections", params->max_rejections}};
      }
      break;
    }
    case DomainKind::array: {
      Json fns = Json::array();
      for (ArrayFn f : problem.array_space().functions) fns.push_back(array_fn_name(f));
      j["functions"] = fns;
      if (const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params)) {
        Json set = Json::array();
        for (ArrayFn f : params->function_set) set.push_back(array_fn_name(f));
        j["params"] = Json{{"function_set", set},
                           {"init_length", params->init_length},
                           {"plan_length", params->plan_length},
                           {"value_min", params->value_min},
                           {"value_max", params->value_max},
                           {"max_rejections", params->max_rejections}};
      }
      break;
    }
    case DomainKind::blocks: {
      Json blocks = Json::array();
      for (Block b : problem.blocks_space().blocks) blocks.push_back(block_name(b));
      j["blocks"] = blocks;
      if (!problem.statement_text.empty()) j["statement"] = problem.statement_text;
      break;
    }
  }
  return j;
}

std::optional<Problem> problem_from_json(const Json& j) {
  try {
    Problem p;
    p.domain_kind = domain_from_string(j.at("domain_kind").get<std::string>());
    p.direction_frame = frame_from_string(j.at("direction_frame").get<std::string>());
    p.seed = j.at("seed").get<std::uint64_t>();
    p.t_max = j.at("t_max").get<int>();

    const Json& init = j.at("initial_state");
    const Json& goal = j.at("goal");
    switch (p.domain_kind) {
      case DomainKind::graph: {
        p.initial_state = init.at("node").get<int>();
        p.goal.at_node = goal.at("at_node").get<int>();
        const Json& g = j.at("graph");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        p.action_space = make_graph(g.at("n").get<int>(), g.at("directed").get<bool>(), edges);
        if (j.contains("params")) {
          const Json& pj = j.at("params");
          GraphProblemParams params;
          params.n = pj.at("n").get<int>();
          params.rho = pj.at("rho").get<double>();
          params.directed = pj.at("directed").get<bool>();
          params.required_path_nodes = pj.at("required_path_nodes").get<int>();
          params.max_rejections = pj.at("max_rejections").get<int>();
          p.gen_params = params;
        }
        break;
      }
      case DomainKind::array: {
        p.initial_state = init.at("array").get<ArrayState>();
        p.goal.equals = goal.at("equals").get<ArrayState>();
        ArraySpace space;
        for (const auto& f : j.at("functions")) {
          const auto fn = array_fn_from_name(f.get<std::string>());
          if (!fn) return std::nullopt;
          space.functions.push_back(*fn);
        }
        p.action_space = space;
        if (j.contains("params")) {
          const Json& pj = j.at("params");
          ArrayProblemParams params;
          for (const auto& f : pj.at("function_set")) {
            const auto fn = array_fn_from_name(f.get<std::string>());
            if (!fn) return std::nullopt;
            params.function_set.push_back(*fn);
          }
          params.init_length = pj.at("init_length").get<int>();
          params.plan_length = pj.at("plan_length").get<int>();
          params.value_min = pj.at("value_min").get<int>();
          params.value_max = pj.at("value_max").get<int>();
          params.max_rejections = pj.at("max_rejections").get<int>();
          p.gen_params = params;
        }
        break;
      }
      case DomainKind::blocks: {
        BlocksState state;
        for (const auto& column : init.at("stacks")) {
          std::vector<Block> stack;
          for (const auto& name : column) {
            const auto b = block_from_name(name.get<std::string>());
            if (!b) return std::nullopt;
            stack.push_back(*b);
          }
          state.stacks.push_back(stack);
        }
        if (init.contains("holding")) {
          const auto b = block_from_name(init.at("holding").get<std::string>());
          if (!b) return std::nullopt;
          state.holding = *b;
        }
        p.initial_state = state;
        for (const auto& clause : goal.at("clauses")) {
          BlockClause c;
          const auto b = block_from_name(clause.at("block").get<std::string>());
          if (!b) return std::nullopt;
          c.block = *b;
          if (clause.contains("on")) {
            const auto s = block_from_name(clause.at("on").get<std::string>());
            if (!s) return std::nullopt;
            c.support = *s;
          }
          p.goal.clauses.push_back(c);
        }
        BlocksSpace space;
        for (const auto& name : j.at("blocks")) {
          const auto b = block_from_name(name.get<std::string>());
          if (!b) return std::nullopt;
          space.blocks.push_back(*b);
        }
        p.action_space = space;
        if (j.contains("statement")) p.statement_text = j.at("statement").get<std::string>();
        break;
      }
    }
    return p;
  } catch (const Json::exception&) {
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace biplan
