#include "biplan/domains.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "biplan/rng.hpp"
#include "biplan/search.hpp"

namespace biplan {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph Planning
// ---------------------------------------------------------------------------

namespace {

Graph sample_gnp(int n, double rho, bool directed, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  if (directed) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (rng.unit() < rho) edges.emplace_back(i, j);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.unit() < rho) edges.emplace_back(i, j);
      }
    }
  }
  return make_graph(n, directed, std::move(edges));
}

}  // namespace

Problem generate_graph_problem(const GraphProblemParams& params, std::uint64_t seed) {
  if (params.n < params.required_path_nodes || params.rho <= 0.0 || params.rho >= 1.0)
    throw ConfigError("generate_graph_problem: invalid params");
  Rng rng(seed);
  for (int attempt = 0; attempt < params.max_rejections; ++attempt) {
    Problem problem;
    problem.domain_kind = DomainKind::graph;
    problem.seed = seed;
    problem.t_max = params.n;
    problem.gen_params = params;
    problem.action_space = sample_gnp(params.n, params.rho, params.directed, rng);
    const int start = rng.below_int(params.n);
    int goal = rng.below_int(params.n - 1);
    if (goal >= start) ++goal;
    problem.initial_state = start;
    problem.goal.at_node = goal;
    const auto length = shortest_path_length(problem);
    if (length && *length == params.required_path_nodes - 1) return problem;
  }
  throw GenerationExhausted("generate_graph_problem: rejection budget exhausted");
}

std::string render_incident(const Problem& problem) {
  const Graph& g = problem.graph();
  const char* verb = g.directed ? "points to" : "is connected to";
  std::string out;
  for (int v = 0; v < g.n; ++v) {
    out += "Node " + std::to_string(v) + " " + verb + " nodes ";
    const auto neighbors = g.out_neighbors(v);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(neighbors[i]);
    }
    out += "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string render_flipped_incident(const Problem& original_problem) {
  const Graph& g = original_problem.graph();
  std::string out;
  for (int v = 0; v < g.n; ++v) {
    out += "Nodes ";
    const auto neighbors = g.out_neighbors(v);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(neighbors[i]);
    }
    out += " points to node " + std::to_string(v) + "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Array Transformation
// ---------------------------------------------------------------------------

namespace {

bool fn_legal(const ArrayState& a, ArrayFn f) {
  if (f != ArrayFn::cut) return true;
  const std::size_t half = a.size() / 2;
  return a.size() % 2 == 0 && std::equal(a.begin(), a.begin() + half, a.begin() + half);
}

ArrayState apply_fn(const ArrayState& a, ArrayFn f) {
  Problem scratch;
  scratch.domain_kind = DomainKind::array;
  scratch.action_space = ArraySpace{{f}};
  return std::get<ArrayState>(apply_action(scratch, a, f));
}

// Applies the sequence left to right; empty on any illegal step.
std::optional<ArrayState> apply_sequence(const ArrayState& start, const std::vector<ArrayFn>& fns) {
  ArrayState cur = start;
  for (ArrayFn f : fns) {
    if (!fn_legal(cur, f)) return std::nullopt;
    cur = apply_fn(cur, f);
  }
  return cur;
}

}  // namespace

ArrayInstance generate_array_instance(const ArrayProblemParams& params, std::uint64_t seed) {
  if (params.function_set.empty() || params.plan_length < 1 || params.init_length < 1 ||
      params.value_min > params.value_max)
    throw ConfigError("generate_array_instance: invalid params");

  auto functions = params.function_set;
  std::sort(functions.begin(), functions.end());
  functions.erase(std::unique(functions.begin(), functions.end()), functions.end());
  const int value_span = params.value_max - params.value_min + 1;

  Rng rng(seed);
  for (int attempt = 0; attempt < params.max_rejections; ++attempt) {
    ArrayState sampled(params.init_length);
    for (int& v : sampled) v = params.value_min + rng.below_int(value_span);

    // repeat may appear at most once so the goal array stays short.
    std::vector<ArrayFn> plan(params.plan_length);
    int repeats = 0;
    do {
      repeats = 0;
      for (auto& f : plan) {
        f = functions[rng.below_int(static_cast<int>(functions.size()))];
        if (f == ArrayFn::repeat) ++repeats;
      }
    } while (repeats > 1);

    const bool has_cut = std::count(plan.begin(), plan.end(), ArrayFn::cut) > 0;
    ArrayState initial;
    ArrayState goal;
    if (!has_cut) {
      const auto result = apply_sequence(sampled, plan);
      if (!result) continue;
      initial = sampled;
      goal = *result;
    } else {
      // Invert the functions, reverse the order, apply them to the sampled
      // array, then swap the roles of initial and goal. Replaying the plan
      // forward then lands every cut on equal halves.
      std::vector<ArrayFn> inverted;
      for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
        inverted.push_back(std::get<ArrayFn>(invert_action(DomainKind::array, *it)));
      }
      const auto result = apply_sequence(sampled, inverted);
      if (!result) continue;
      initial = *result;
      goal = sampled;
    }
    if (initial == goal) continue;

    ArrayInstance instance;
    instance.problem.domain_kind = DomainKind::array;
    instance.problem.seed = seed;
    instance.problem.t_max = 8;
    instance.problem.initial_state = initial;
    instance.problem.goal.equals = goal;
    instance.problem.action_space = ArraySpace{functions};
    instance.problem.gen_params = params;
    instance.hidden_plan = plan;
    ArrayState cur = initial;
    bool replayable = true;
    for (ArrayFn f : plan) {
      if (!fn_legal(cur, f)) {
        replayable = false;
        break;
      }
      cur = apply_fn(cur, f);
      instance.intermediates.push_back(cur);
    }
    if (!replayable || cur != goal) continue;  // cut construction failed to round-trip
    return instance;
  }
  throw GenerationExhausted("generate_array_instance: rejection budget exhausted");
}

Problem generate_array_problem(const ArrayProblemParams& params, std::uint64_t seed) {
  return generate_array_instance(params, seed).problem;
}

// ---------------------------------------------------------------------------
// Blocksworld
// ---------------------------------------------------------------------------

namespace {

struct StatementClauses {
  std::vector<Block> clear;
  bool hand_empty = false;
  std::vector<std::pair<Block, Block>> on;  // (block, support)
  std::vector<Block> on_table;
};

std::vector<std::string> split_clauses(const std::string& text) {
  // Clause lists are separated by ", " and the final " and ".
  std::vector<std::string> parts;
  std::string cur;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 2, ", ") == 0) {
      parts.push_back(cur);
      cur.clear();
      pos += 2;
    } else if (text.compare(pos, 5, " and ") == 0) {
      parts.push_back(cur);
      cur.clear();
      pos += 5;
    } else {
      cur += text[pos];
      ++pos;
    }
  }
  if (!trim(cur).empty()) parts.push_back(cur);
  return parts;
}

StatementClauses parse_clauses(const std::string& text) {
  StatementClauses out;
  for (const auto& raw : split_clauses(text)) {
    const std::string clause = trim(raw);
    if (clause.empty()) continue;
    if (clause == "the hand is empty" || clause == "hand is empty") {
      out.hand_empty = true;
      continue;
    }
    // "the X block is ..." forms
    const std::string prefix = "the ";
    if (clause.rfind(prefix, 0) != 0) throw ParseError("unknown clause: " + clause);
    const auto block_end = clause.find(" block is ");
    if (block_end == std::string::npos) throw ParseError("unknown clause: " + clause);
    const auto block = block_from_name(clause.substr(prefix.size(), block_end - prefix.size()));
    if (!block) throw ParseError("unknown block in clause: " + clause);
    const std::string rest = clause.substr(block_end + 10);
    if (rest == "clear") {
      out.clear.push_back(*block);
    } else if (rest == "on the table") {
      out.on_table.push_back(*block);
    } else if (rest.rfind("on top of the ", 0) == 0) {
      const auto support_end = rest.find(" block", 14);
      if (support_end == std::string::npos) throw ParseError("unknown clause: " + clause);
      const auto support = block_from_name(rest.substr(14, support_end - 14));
      if (!support) throw ParseError("unknown block in clause: " + clause);
      out.on.emplace_back(*block, *support);
    } else {
      throw ParseError("unknown clause: " + clause);
    }
  }
  return out;
}

BlocksState state_from_clauses(const StatementClauses& c) {
  std::set<Block> universe;
  for (Block b : c.on_table) universe.insert(b);
  for (const auto& [b, s] : c.on) {
    universe.insert(b);
    universe.insert(s);
  }
  for (Block b : c.clear) universe.insert(b);
  if (universe.empty()) throw InconsistentState("statement mentions no blocks");

  std::map<Block, Block> above;
  std::set<Block> placed;
  for (const auto& [b, s] : c.on) {
    if (b == s) throw InconsistentState("block on top of itself");
    if (placed.count(b)) throw InconsistentState("block placed twice");
    if (above.count(s)) throw InconsistentState("two blocks on the same support");
    above[s] = b;
    placed.insert(b);
  }
  for (Block b : c.on_table) {
    if (placed.count(b)) throw InconsistentState("block placed twice");
    placed.insert(b);
  }
  if (placed.size() != universe.size()) throw InconsistentState("block position unspecified");

  BlocksState state;
  std::set<Block> built;
  for (Block b : c.on_table) {
    std::vector<Block> column{b};
    Block cur = b;
    while (above.count(cur)) {
      cur = above.at(cur);
      column.push_back(cur);
      if (column.size() > universe.size()) throw InconsistentState("cycle in on-relation");
    }
    for (Block x : column) built.insert(x);
    state.stacks.push_back(std::move(column));
  }
  if (built.size() != universe.size()) throw InconsistentState("cycle in on-relation");

  // Stated clear blocks must actually be tops.
  for (Block b : c.clear) {
    if (!state.clear(b)) throw InconsistentState(std::string(block_name(b)) + " is not clear");
  }
  return state;
}

}  // namespace

Problem import_planbench(const std::string& statement_text) {
  const std::string text = lower(statement_text);
  const auto init_marker = text.find("initial conditions");
  if (init_marker == std::string::npos) throw ParseError("missing initial conditions");
  auto init_start = text.find("that", init_marker);
  if (init_start == std::string::npos) throw ParseError("missing initial conditions");
  init_start += 4;
  while (init_start < text.size() && (text[init_start] == ',' || text[init_start] == ' ')) {
    ++init_start;
  }
  auto goal_marker = text.find("goal is to have that", init_marker);
  if (goal_marker == std::string::npos) throw ParseError("missing goal");
  // Back up over "My goal" / "Your goal" and the period before it.
  auto init_end = text.rfind('.', goal_marker);
  if (init_end == std::string::npos || init_end < init_start) throw ParseError("missing period");
  const std::string init_text = text.substr(init_start, init_end - init_start);

  auto goal_start = goal_marker + 20;
  while (goal_start < text.size() && text[goal_start] == ' ') ++goal_start;
  auto goal_end = text.find('.', goal_start);
  if (goal_end == std::string::npos) goal_end = text.size();
  const std::string goal_text = text.substr(goal_start, goal_end - goal_start);

  const auto init_clauses = parse_clauses(init_text);
  BlocksState initial = state_from_clauses(init_clauses);

  const auto goal_clauses = parse_clauses(goal_text);
  if (!goal_clauses.clear.empty())
    throw ParseError("clear clauses are not supported in goals");
  std::vector<BlockClause> goal;
  for (const auto& [b, s] : goal_clauses.on) {
    if (b == s) throw InconsistentState("block on top of itself in goal");
    goal.push_back(BlockClause{b, s});
  }
  for (Block b : goal_clauses.on_table) goal.push_back(BlockClause{b, std::nullopt});
  if (goal.empty()) throw ParseError("empty goal");

  const auto universe = initial.universe();
  for (const auto& clause : goal) {
    const bool known = std::count(universe.begin(), universe.end(), clause.block) &&
                       (!clause.support || std::count(universe.begin(), universe.end(), *clause.support));
    if (!known) throw InconsistentState("goal mentions a block not in the initial state");
  }

  Problem problem;
  problem.domain_kind = DomainKind::blocks;
  problem.t_max = 20;
  problem.initial_state = initial;
  problem.goal.clauses = goal;
  problem.action_space = BlocksSpace{universe};
  problem.statement_text = statement_text;
  // The goal must be checkable for completion; rejects contradictions early.
  (void)backward_start_state(problem);
  if (goal_satisfied(problem, problem.initial_state))
    throw InconsistentState("initial state already satisfies the goal");
  return problem;
}

std::string render_planbench_statement(const BlocksState& initial,
                                       const std::vector<BlockClause>& goal) {
  std::vector<std::string> init_clauses;
  for (Block b : initial.universe()) {
    if (initial.clear(b)) {
      init_clauses.push_back(std::string("the ") + block_name(b) + " block is clear");
    }
  }
  init_clauses.push_back("the hand is empty");
  for (Block b : initial.universe()) {
    const auto support = initial.below(b);
    if (support) {
      init_clauses.push_back(std::string("the ") + block_name(b) + " block is on top of the " +
                             block_name(*support) + " block");
    }
  }
  for (Block b : initial.universe()) {
    if (initial.on_table(b)) {
      init_clauses.push_back(std::string("the ") + block_name(b) + " block is on the table");
    }
  }

  std::vector<std::string> goal_clauses;
  for (const auto& clause : goal) {
    if (clause.support) {
      goal_clauses.push_back(std::string("the ") + block_name(clause.block) +
                             " block is on top of the " + block_name(*clause.support) + " block");
    } else {
      goal_clauses.push_back(std::string("the ") + block_name(clause.block) +
                             " block is on the table");
    }
  }

  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out += (i + 1 == parts.size()) ? " and " : ", ";
      out += parts[i];
    }
    return out;
  };

  return "As initial conditions you have that, " + join(init_clauses) +
         ".\nYour goal is to have that " + join(goal_clauses) + ".";
}

namespace {

BlocksState random_arrangement(Rng& rng) {
  std::vector<Block> order{Block::blue, Block::orange, Block::red, Block::yellow};
  for (int i = 3; i > 0; --i) {
    std::swap(order[i], order[rng.below_int(i + 1)]);
  }
  BlocksState state;
  for (Block b : order) {
    const int options = static_cast<int>(state.stacks.size()) + 1;
    const int where = rng.below_int(options);
    if (where == 0) {
      state.stacks.push_back({b});
    } else {
      state.stacks[where - 1].push_back(b);
    }
  }
  return state;
}

}  // namespace

Problem generate_blocks_problem(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const BlocksState initial = random_arrangement(rng);
    const BlocksState target = random_arrangement(rng);
    std::vector<BlockClause> on_clauses;
    for (const auto& stack : target.canonical_stacks()) {
      for (std::size_t i = 1; i < stack.size(); ++i) {
        on_clauses.push_back(BlockClause{stack[i], stack[i - 1]});
      }
    }
    if (on_clauses.empty()) continue;
    // Keep a random nonempty subset, PlanBench-style partial goals.
    std::vector<BlockClause> goal;
    for (const auto& clause : on_clauses) {
      if (rng.unit() < 0.75) goal.push_back(clause);
    }
    if (goal.empty()) goal.push_back(on_clauses[rng.below_int(static_cast<int>(on_clauses.size()))]);

    const std::string statement = render_planbench_statement(initial, goal);
    try {
      Problem problem = import_planbench(statement);
      problem.seed = seed;
      return problem;
    } catch (const Error&) {
      continue;  // goal already satisfied or degenerate; resample
    }
  }
  throw GenerationExhausted("generate_blocks_problem: rejection budget exhausted");
}

bool blocks_step_legal(const BlocksState& state, const BlocksMove& move) {
  Problem scratch;
  scratch.domain_kind = DomainKind::blocks;
  scratch.action_space = BlocksSpace{state.universe()};
  scratch.initial_state = state;
  try {
    (void)apply_action(scratch, state, move);
    return true;
  } catch (const IllegalAction&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Flipping
// ---------------------------------------------------------------------------

Problem flip_problem(const Problem& problem) {
  Problem flipped = problem;
  flipped.direction_frame =
      problem.direction_frame == Frame::original ? Frame::flipped : Frame::original;
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const int old_start = std::get<int>(problem.initial_state);
      flipped.initial_state = *problem.goal.at_node;
      flipped.goal.at_node = old_start;
      flipped.action_space = problem.graph().reversed();
      return flipped;
    }
    case DomainKind::array: {
      const auto old_initial = std::get<ArrayState>(problem.initial_state);
      flipped.initial_state = *problem.goal.equals;
      flipped.goal.equals = old_initial;
      return flipped;
    }
    case DomainKind::blocks: {
      // New initial state = completed old goal; new goal = the old initial
      // state's full clause set.
      const auto& old_initial = std::get<BlocksState>(problem.initial_state);
      flipped.initial_state = backward_start_state(problem);
      std::vector<BlockClause> goal;
      for (Block b : old_initial.universe()) {
        const auto support = old_initial.below(b);
        if (support) {
          goal.push_back(BlockClause{b, *support});
        } else if (old_initial.on_table(b)) {
          goal.push_back(BlockClause{b, std::nullopt});
        } else {
          throw IncompleteGoal("cannot flip a state with a held block");
        }
      }
      flipped.goal.clauses = goal;
      flipped.statement_text.clear();
      return flipped;
    }
  }
  throw Error("flip_problem: unknown domain");
}

}  // namespace biplan
