#include "biplan/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace biplan {

const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::graph: return "graph";
    case DomainKind::array: return "array";
    case DomainKind::blocks: return "blocks";
  }
  return "?";
}

const char* to_string(Frame f) { return f == Frame::original ? "original" : "flipped"; }

const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

const char* block_name(Block b) {
  switch (b) {
    case Block::blue: return "blue";
    case Block::orange: return "orange";
    case Block::red: return "red";
    case Block::yellow: return "yellow";
  }
  return "?";
}

std::optional<Block> block_from_name(const std::string& name) {
  for (Block b : {Block::blue, Block::orange, Block::red, Block::yellow}) {
    if (name == block_name(b)) return b;
  }
  return std::nullopt;
}

const char* array_fn_name(ArrayFn f) {
  switch (f) {
    case ArrayFn::cut: return "cut";
    case ArrayFn::repeat: return "repeat";
    case ArrayFn::reverse: return "reverse";
    case ArrayFn::shift_left: return "shift_left";
    case ArrayFn::shift_right: return "shift_right";
    case ArrayFn::swap: return "swap";
  }
  return "?";
}

std::optional<ArrayFn> array_fn_from_name(const std::string& name) {
  for (ArrayFn f : {ArrayFn::cut, ArrayFn::repeat, ArrayFn::reverse, ArrayFn::shift_left,
                    ArrayFn::shift_right, ArrayFn::swap}) {
    if (name == array_fn_name(f)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// BlocksState
// ---------------------------------------------------------------------------

bool BlocksState::clear(Block b) const {
  if (holding == b) return false;
  for (const auto& stack : stacks) {
    if (!stack.empty() && stack.back() == b) return true;
  }
  return false;
}

bool BlocksState::on_table(Block b) const {
  for (const auto& stack : stacks) {
    if (!stack.empty() && stack.front() == b) return true;
  }
  return false;
}

std::optional<Block> BlocksState::below(Block b) const {
  for (const auto& stack : stacks) {
    for (std::size_t i = 1; i < stack.size(); ++i) {
      if (stack[i] == b) return stack[i - 1];
    }
  }
  return std::nullopt;
}

std::vector<Block> BlocksState::universe() const {
  std::vector<Block> all;
  for (const auto& stack : stacks) all.insert(all.end(), stack.begin(), stack.end());
  if (holding) all.push_back(*holding);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::vector<Block>> BlocksState::canonical_stacks() const {
  auto sorted = stacks;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return sorted;
}

bool operator==(const BlocksState& a, const BlocksState& b) {
  return a.holding == b.holding && a.canonical_stacks() == b.canonical_stacks();
}

bool operator==(const BlockClause& a, const BlockClause& b) {
  return a.block == b.block && a.support == b.support;
}

// ---------------------------------------------------------------------------
// Keys and equality
// ---------------------------------------------------------------------------

bool states_equal(const State& a, const State& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<int>(a)) return std::get<int>(a) == std::get<int>(b);
  if (std::holds_alternative<ArrayState>(a)) return std::get<ArrayState>(a) == std::get<ArrayState>(b);
  return std::get<BlocksState>(a) == std::get<BlocksState>(b);
}

std::string state_key(const State& s) {
  std::ostringstream out;
  if (std::holds_alternative<int>(s)) {
    out << "n" << std::get<int>(s);
  } else if (std::holds_alternative<ArrayState>(s)) {
    out << "a";
    for (int v : std::get<ArrayState>(s)) out << v << ",";
  } else {
    const auto& bs = std::get<BlocksState>(s);
    out << "b";
    if (bs.holding) out << "h" << static_cast<int>(*bs.holding);
    for (const auto& stack : bs.canonical_stacks()) {
      out << "|";
      for (Block b : stack) out << static_cast<int>(b);
    }
  }
  return out.str();
}

bool actions_equal(const Action& a, const Action& b) { return action_key(a) == action_key(b); }

std::string action_key(const Action& a) {
  std::ostringstream out;
  if (const auto* g = std::get_if<GraphMove>(&a)) {
    out << "g" << g->from << ">" << g->to;
  } else if (const auto* f = std::get_if<ArrayFn>(&a)) {
    out << "f" << array_fn_name(*f);
  } else {
    const auto& m = std::get<BlocksMove>(a);
    out << "b" << static_cast<int>(m.kind) << static_cast<int>(m.block);
    if (m.target) out << ">" << static_cast<int>(*m.target);
  }
  return out.str();
}

bool plans_equal(const Plan& a, const Plan& b) { return plan_key(a) == plan_key(b); }

std::string plan_key(const Plan& p) {
  std::string key;
  for (const auto& a : p.actions) {
    key += action_key(a);
    key += ";";
  }
  return key;
}

std::vector<int> node_sequence(const Problem&, const Plan& plan) {
  std::vector<int> nodes;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const auto& move = std::get<GraphMove>(plan.actions[i]);
    if (i == 0) nodes.push_back(move.from);
    nodes.push_back(move.to);
  }
  return nodes;
}

Plan plan_from_node_sequence(const std::vector<int>& nodes, Direction direction, Frame frame) {
  Plan plan;
  plan.direction = direction;
  plan.frame = frame;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    plan.actions.push_back(GraphMove{nodes[i], nodes[i + 1]});
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

Graph make_graph(int n, bool directed, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n = n;
  g.directed = directed;
  for (auto& [u, v] : edges) {
    if (!directed && u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

std::vector<int> Graph::out_neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (!directed && b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Graph::in_neighbors(int v) const {
  if (!directed) return out_neighbors(v);
  std::vector<int> in;
  for (const auto& [a, b] : edges) {
    if (b == v) in.push_back(a);
  }
  std::sort(in.begin(), in.end());
  return in;
}

bool Graph::has_edge(int u, int v) const {
  for (const auto& [a, b] : edges) {
    if (a == u && b == v) return true;
    if (!directed && a == v && b == u) return true;
  }
  return false;
}

Graph Graph::reversed() const {
  if (!directed) return *this;
  std::vector<std::pair<int, int>> rev;
  rev.reserve(edges.size());
  for (const auto& [u, v] : edges) rev.emplace_back(v, u);
  return make_graph(n, true, std::move(rev));
}

const Graph& Problem::graph() const { return std::get<Graph>(action_space); }
const ArraySpace& Problem::array_space() const { return std::get<ArraySpace>(action_space); }
const BlocksSpace& Problem::blocks_space() const { return std::get<BlocksSpace>(action_space); }

// ---------------------------------------------------------------------------
// apply_action
// ---------------------------------------------------------------------------

namespace {

ArrayState apply_array_fn(const ArrayState& a, ArrayFn f) {
  switch (f) {
    case ArrayFn::repeat: {
      ArrayState out = a;
      out.insert(out.end(), a.begin(), a.end());
      return out;
    }
    case ArrayFn::cut: {
      const std::size_t half = a.size() / 2;
      const bool equal = a.size() % 2 == 0 &&
                         std::equal(a.begin(), a.begin() + half, a.begin() + half);
      if (!equal) throw IllegalAction("cut: halves are not equal");
      return ArrayState(a.begin(), a.begin() + half);
    }
    case ArrayFn::shift_left: {
      if (a.empty()) return a;
      ArrayState out(a.begin() + 1, a.end());
      out.push_back(a.front());
      return out;
    }
    case ArrayFn::shift_right: {
      if (a.empty()) return a;
      ArrayState out{a.back()};
      out.insert(out.end(), a.begin(), a.end() - 1);
      return out;
    }
    case ArrayFn::reverse: {
      return ArrayState(a.rbegin(), a.rend());
    }
    case ArrayFn::swap: {
      ArrayState out = a;
      if (out.size() >= 2) std::swap(out.front(), out.back());
      return out;
    }
  }
  throw IllegalAction("unknown array function");
}

// Remove b from its stack top; drops the stack slot when it empties.
void take_block(BlocksState& s, Block b) {
  for (std::size_t i = 0; i < s.stacks.size(); ++i) {
    if (!s.stacks[i].empty() && s.stacks[i].back() == b) {
      s.stacks[i].pop_back();
      if (s.stacks[i].empty()) s.stacks.erase(s.stacks.begin() + i);
      return;
    }
  }
  throw IllegalAction(std::string("block not on top of any stack: ") + block_name(b));
}

BlocksState apply_blocks_move(const BlocksState& state, const BlocksMove& m) {
  BlocksState s = state;
  const std::string who = block_name(m.block);
  switch (m.kind) {
    case BlocksMoveKind::pick_up: {
      if (s.holding) throw IllegalAction("pick up " + who + ": hand is not empty");
      if (!s.clear(m.block)) throw IllegalAction("pick up " + who + ": block is not clear");
      if (!s.on_table(m.block)) throw IllegalAction("pick up " + who + ": block is not on the table");
      take_block(s, m.block);
      s.holding = m.block;
      return s;
    }
    case BlocksMoveKind::put_down: {
      if (s.holding != m.block) throw IllegalAction("put down " + who + ": not holding it");
      s.holding.reset();
      s.stacks.push_back({m.block});
      return s;
    }
    case BlocksMoveKind::stack: {
      if (!m.target) throw IllegalAction("stack " + who + ": missing target");
      if (s.holding != m.block) throw IllegalAction("stack " + who + ": not holding it");
      if (!s.clear(*m.target))
        throw IllegalAction("stack " + who + ": target " + block_name(*m.target) + " is not clear");
      s.holding.reset();
      for (auto& stack : s.stacks) {
        if (!stack.empty() && stack.back() == *m.target) {
          stack.push_back(m.block);
          return s;
        }
      }
      throw IllegalAction("stack " + who + ": target vanished");
    }
    case BlocksMoveKind::unstack: {
      if (!m.target) throw IllegalAction("unstack " + who + ": missing source");
      if (s.holding) throw IllegalAction("unstack " + who + ": hand is not empty");
      if (!s.clear(m.block)) throw IllegalAction("unstack " + who + ": block is not clear");
      if (s.below(m.block) != *m.target)
        throw IllegalAction("unstack " + who + ": not on top of " + block_name(*m.target));
      take_block(s, m.block);
      s.holding = m.block;
      return s;
    }
  }
  throw IllegalAction("unknown blocks move");
}

}  // namespace

State apply_action(const Problem& problem, const State& state, const Action& action) {
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const auto& move = std::get<GraphMove>(action);
      const int at = std::get<int>(state);
      if (at != move.from)
        throw IllegalAction("goto: not at node " + std::to_string(move.from));
      if (!problem.graph().has_edge(move.from, move.to))
        throw IllegalAction("goto: no edge " + std::to_string(move.from) + " -> " +
                            std::to_string(move.to));
      return move.to;
    }
    case DomainKind::array:
      return apply_array_fn(std::get<ArrayState>(state), std::get<ArrayFn>(action));
    case DomainKind::blocks:
      return apply_blocks_move(std::get<BlocksState>(state), std::get<BlocksMove>(action));
  }
  throw IllegalAction("unknown domain");
}

Action invert_action(DomainKind kind, const Action& action) {
  switch (kind) {
    case DomainKind::graph: {
      const auto& move = std::get<GraphMove>(action);
      return GraphMove{move.to, move.from};
    }
    case DomainKind::array: {
      switch (std::get<ArrayFn>(action)) {
        case ArrayFn::repeat: return ArrayFn::cut;
        case ArrayFn::cut: return ArrayFn::repeat;
        case ArrayFn::shift_left: return ArrayFn::shift_right;
        case ArrayFn::shift_right: return ArrayFn::shift_left;
        case ArrayFn::reverse: return ArrayFn::reverse;
        case ArrayFn::swap: return ArrayFn::swap;
      }
      break;
    }
    case DomainKind::blocks: {
      BlocksMove m = std::get<BlocksMove>(action);
      switch (m.kind) {
        case BlocksMoveKind::pick_up: m.kind = BlocksMoveKind::put_down; break;
        case BlocksMoveKind::put_down: m.kind = BlocksMoveKind::pick_up; break;
        case BlocksMoveKind::stack: m.kind = BlocksMoveKind::unstack; break;
        case BlocksMoveKind::unstack: m.kind = BlocksMoveKind::stack; break;
      }
      return m;
    }
  }
  throw IllegalAction("unknown action");
}

// ---------------------------------------------------------------------------
// Goals
// ---------------------------------------------------------------------------

namespace {

bool clause_holds(const BlocksState& s, const BlockClause& c) {
  if (s.holding == c.block) return false;
  if (c.support) return s.below(c.block) == *c.support;
  return s.on_table(c.block);
}

}  // namespace

bool goal_satisfied(const Problem& problem, const State& state) {
  const Goal& goal = problem.goal;
  switch (problem.domain_kind) {
    case DomainKind::graph:
      return goal.at_node && std::get<int>(state) == *goal.at_node;
    case DomainKind::array:
      return goal.equals && std::get<ArrayState>(state) == *goal.equals;
    case DomainKind::blocks: {
      const auto& bs = std::get<BlocksState>(state);
      for (const auto& clause : goal.clauses) {
        if (!clause_holds(bs, clause)) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Action enumeration
// ---------------------------------------------------------------------------

namespace {

std::vector<Action> blocks_moves_at(const BlocksState& s) {
  std::vector<Action> moves;
  if (s.holding) {
    const Block held = *s.holding;
    moves.push_back(BlocksMove{BlocksMoveKind::put_down, held, std::nullopt});
    for (const auto& stack : s.stacks) {
      if (!stack.empty()) moves.push_back(BlocksMove{BlocksMoveKind::stack, held, stack.back()});
    }
  } else {
    for (const auto& stack : s.stacks) {
      if (stack.empty()) continue;
      const Block top = stack.back();
      if (stack.size() == 1) {
        moves.push_back(BlocksMove{BlocksMoveKind::pick_up, top, std::nullopt});
      } else {
        moves.push_back(BlocksMove{BlocksMoveKind::unstack, top, stack[stack.size() - 2]});
      }
    }
  }
  std::sort(moves.begin(), moves.end(),
            [](const Action& a, const Action& b) { return action_key(a) < action_key(b); });
  return moves;
}

}  // namespace

std::vector<Action> legal_actions(const Problem& problem, const State& state) {
  std::vector<Action> actions;
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const int at = std::get<int>(state);
      for (int v : problem.graph().out_neighbors(at)) actions.push_back(GraphMove{at, v});
      return actions;
    }
    case DomainKind::array: {
      const auto& arr = std::get<ArrayState>(state);
      for (ArrayFn f : problem.array_space().functions) {
        if (f == ArrayFn::cut) {
          const std::size_t half = arr.size() / 2;
          const bool equal = arr.size() % 2 == 0 &&
                             std::equal(arr.begin(), arr.begin() + half, arr.begin() + half);
          if (!equal) continue;
        }
        actions.push_back(f);
      }
      return actions;
    }
    case DomainKind::blocks:
      return blocks_moves_at(std::get<BlocksState>(state));
  }
  return actions;
}

std::vector<Action> inverse_legal_actions(const Problem& problem, const State& state) {
  std::vector<Action> actions;
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const int at = std::get<int>(state);
      for (int u : problem.graph().in_neighbors(at)) actions.push_back(GraphMove{at, u});
      return actions;
    }
    case DomainKind::array: {
      const auto& arr = std::get<ArrayState>(state);
      std::vector<ArrayFn> inverses;
      for (ArrayFn f : problem.array_space().functions) {
        inverses.push_back(std::get<ArrayFn>(invert_action(DomainKind::array, f)));
      }
      std::sort(inverses.begin(), inverses.end());
      inverses.erase(std::unique(inverses.begin(), inverses.end()), inverses.end());
      for (ArrayFn f : inverses) {
        if (f == ArrayFn::cut) {
          const std::size_t half = arr.size() / 2;
          const bool equal = arr.size() % 2 == 0 &&
                             std::equal(arr.begin(), arr.begin() + half, arr.begin() + half);
          if (!equal) continue;
        }
        actions.push_back(f);
      }
      return actions;
    }
    case DomainKind::blocks:
      // The blocks action set is closed under inversion, so the backward
      // moves at a state are exactly its legal moves.
      return blocks_moves_at(std::get<BlocksState>(state));
  }
  return actions;
}

State apply_inverse_action(const Problem& problem, const State& state, const Action& action) {
  if (problem.domain_kind == DomainKind::graph && problem.graph().directed) {
    const auto& move = std::get<GraphMove>(action);
    const int at = std::get<int>(state);
    if (at != move.from)
      throw IllegalAction("goto: not at node " + std::to_string(move.from));
    if (!problem.graph().has_edge(move.to, move.from))
      throw IllegalAction("goto: no reverse edge " + std::to_string(move.to) + " -> " +
                          std::to_string(move.from));
    return move.to;
  }
  return apply_action(problem, state, action);
}

State backward_start_state(const Problem& problem) {
  switch (problem.domain_kind) {
    case DomainKind::graph:
      if (!problem.goal.at_node) throw IncompleteGoal("graph goal has no node");
      return *problem.goal.at_node;
    case DomainKind::array:
      if (!problem.goal.equals) throw IncompleteGoal("array goal has no target");
      return *problem.goal.equals;
    case DomainKind::blocks: {
      // Chains from on(x,y) clauses; everything unplaced goes on the table.
      const auto universe = problem.blocks_space().blocks;
      std::map<Block, Block> above;  // support -> block resting on it
      std::set<Block> supported;     // blocks that rest on another block
      std::set<Block> on_table;
      for (const auto& clause : problem.goal.clauses) {
        if (clause.support) {
          if (supported.count(clause.block) || on_table.count(clause.block))
            throw InconsistentState("block placed twice in goal");
          if (above.count(*clause.support))
            throw InconsistentState("two blocks on the same support in goal");
          above[*clause.support] = clause.block;
          supported.insert(clause.block);
        } else {
          if (supported.count(clause.block) || on_table.count(clause.block))
            throw InconsistentState("block placed twice in goal");
          on_table.insert(clause.block);
        }
      }
      BlocksState state;
      std::set<Block> placed;
      for (Block b : universe) {
        // A chain bottom is a block that does not rest on anything.
        if (supported.count(b)) continue;
        std::vector<Block> column{b};
        Block cur = b;
        while (above.count(cur)) {
          cur = above.at(cur);
          column.push_back(cur);
          if (column.size() > universe.size()) throw InconsistentState("cycle in goal clauses");
        }
        for (Block c : column) {
          if (placed.count(c)) throw InconsistentState("cycle in goal clauses");
          placed.insert(c);
        }
        state.stacks.push_back(std::move(column));
      }
      if (placed.size() != universe.size()) throw InconsistentState("cycle in goal clauses");
      return state;
    }
  }
  throw IncompleteGoal("unknown domain");
}

// ---------------------------------------------------------------------------
// validate_plan
// ---------------------------------------------------------------------------

PlanVerdict validate_plan(const Problem& problem, const Plan& plan, const OptimalityOracle& oracle) {
  if (plan.frame != problem.direction_frame)
    throw Error("validate_plan: plan frame does not match the problem");
  if (plan.direction != Direction::forward)
    throw Error("validate_plan: backward plans must be reversed first");

  PlanVerdict verdict;
  if (static_cast<int>(plan.actions.size()) > problem.t_max - 1) {
    verdict.valid = false;
    verdict.failure_step = problem.t_max - 1;
    verdict.reason = "plan exceeds t_max - 1 actions";
    return verdict;
  }

  State state = problem.initial_state;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    try {
      state = apply_action(problem, state, plan.actions[i]);
    } catch (const IllegalAction& e) {
      verdict.valid = false;
      verdict.failure_step = static_cast<int>(i);
      verdict.reason = e.what();
      return verdict;
    }
  }
  if (!goal_satisfied(problem, state)) {
    verdict.valid = false;
    verdict.failure_step = static_cast<int>(plan.actions.size());
    verdict.reason = plan.actions.empty() ? "initial state does not satisfy the goal"
                                          : "final state does not satisfy the goal";
    return verdict;
  }
  verdict.valid = true;
  verdict.reason = "ok";
  if (problem.domain_kind == DomainKind::graph) {
    const auto shortest = oracle.shortest_path_length(problem);
    verdict.optimal = shortest && static_cast<int>(plan.actions.size()) == *shortest;
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Text forms
// ---------------------------------------------------------------------------

std::string render_array(const ArrayState& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(a[i]);
  }
  out += "]";
  return out;
}

std::optional<ArrayState> parse_array(const std::string& text) {
  const auto open = text.find('[');
  const auto close = text.find(']', open == std::string::npos ? 0 : open);
  if (open == std::string::npos || close == std::string::npos) return std::nullopt;
  ArrayState out;
  std::string token;
  for (std::size_t i = open + 1; i <= close; ++i) {
    const char c = text[i];
    if (c == ',' || c == ']') {
      if (!token.empty()) {
        try {
          out.push_back(std::stoi(token));
        } catch (...) {
          return std::nullopt;
        }
        token.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      if (c != '-' && !std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      token += c;
    }
  }
  return out;
}

std::string render_blocks_compact(const BlocksState& state) {
  std::vector<std::string> parts;
  if (state.holding) parts.push_back(std::string(block_name(*state.holding)) + " on hand");
  for (const auto& stack : state.stacks) {
    std::string part;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      if (!part.empty()) part += " on ";
      part += block_name(*it);
    }
    parts.push_back(part);
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "; ";
    out += parts[i];
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && (std::isspace(static_cast<unsigned char>(s[b - 1])) || s[b - 1] == '.')) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return parts;
}

// "a on b on c" -> chain top..bottom; "a" -> single block.
std::optional<std::vector<Block>> parse_chain(const std::string& text) {
  std::vector<Block> chain;
  for (const auto& piece : split(text, " on ")) {
    const auto b = block_from_name(trim(piece));
    if (!b) return std::nullopt;
    chain.push_back(*b);
  }
  return chain;
}

}  // namespace

std::optional<BlocksState> parse_blocks_compact(const std::string& text) {
  BlocksState state;
  for (const auto& raw : split(text, ";")) {
    const std::string part = trim(raw);
    if (part.empty()) continue;
    if (part.size() > 8 && part.substr(part.size() - 8) == " on hand") {
      const auto b = block_from_name(trim(part.substr(0, part.size() - 8)));
      if (!b || state.holding) return std::nullopt;
      state.holding = *b;
      continue;
    }
    const auto chain = parse_chain(part);
    if (!chain) return std::nullopt;
    // Rendered top-first; stacks are stored bottom-first.
    state.stacks.emplace_back(chain->rbegin(), chain->rend());
  }
  // Every block at most once.
  auto all = state.universe();
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return std::nullopt;
  return state;
}

std::string render_goal_compact(const std::vector<BlockClause>& clauses) {
  // Merge on(x,y) clauses into maximal chains, ordered by bottom block.
  std::map<Block, Block> above;
  std::set<Block> supported;
  std::vector<Block> table;
  for (const auto& c : clauses) {
    if (c.support) {
      above[*c.support] = c.block;
      supported.insert(c.block);
    } else {
      table.push_back(c.block);
    }
  }
  std::vector<std::string> parts;
  std::set<Block> used;
  for (const auto& [support, block] : above) {
    (void)block;
    if (supported.count(support)) continue;  // not a chain bottom
    std::vector<Block> column{support};
    Block cur = support;
    while (above.count(cur)) {
      cur = above.at(cur);
      column.push_back(cur);
      if (column.size() > 8) break;
    }
    std::string part;
    for (auto it = column.rbegin(); it != column.rend(); ++it) {
      if (!part.empty()) part += " on ";
      part += block_name(*it);
    }
    parts.push_back(part);
    for (Block b : column) used.insert(b);
  }
  std::sort(table.begin(), table.end());
  for (Block b : table) {
    if (!used.count(b)) parts.push_back(block_name(b));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "; ";
    out += parts[i];
  }
  return out;
}

std::optional<std::vector<BlockClause>> parse_goal_compact(const std::string& text) {
  std::vector<BlockClause> clauses;
  for (const auto& raw : split(text, ";")) {
    const std::string part = trim(raw);
    if (part.empty()) continue;
    const auto chain = parse_chain(part);
    if (!chain) return std::nullopt;
    if (chain->size() == 1) {
      clauses.push_back(BlockClause{(*chain)[0], std::nullopt});
    } else {
      for (std::size_t i = 0; i + 1 < chain->size(); ++i) {
        clauses.push_back(BlockClause{(*chain)[i], (*chain)[i + 1]});
      }
    }
  }
  return clauses;
}

std::string render_blocks_move(const BlocksMove& m) {
  const std::string who = std::string("the ") + block_name(m.block) + " block";
  switch (m.kind) {
    case BlocksMoveKind::pick_up: return "pick up " + who;
    case BlocksMoveKind::put_down: return "put down " + who;
    case BlocksMoveKind::stack:
      return "stack " + who + " on top of the " + std::string(block_name(*m.target)) + " block";
    case BlocksMoveKind::unstack:
      return "unstack " + who + " from on top of the " + std::string(block_name(*m.target)) +
             " block";
  }
  return "";
}

std::optional<BlocksMove> parse_blocks_move(const std::string& line) {
  const std::string text = trim(line);
  auto block_after = [&](const std::string& prefix,
                         std::size_t from) -> std::optional<std::pair<Block, std::size_t>> {
    const auto pos = text.find(prefix, from);
    if (pos == std::string::npos) return std::nullopt;
    const auto start = pos + prefix.size();
    const auto end = text.find(" block", start);
    if (end == std::string::npos) return std::nullopt;
    const auto b = block_from_name(text.substr(start, end - start));
    if (!b) return std::nullopt;
    return std::make_pair(*b, end);
  };
  if (text.rfind("pick up ", 0) == 0) {
    const auto b = block_after("the ", 0);
    if (!b) return std::nullopt;
    return BlocksMove{BlocksMoveKind::pick_up, b->first, std::nullopt};
  }
  if (text.rfind("put down ", 0) == 0) {
    const auto b = block_after("the ", 0);
    if (!b) return std::nullopt;
    return BlocksMove{BlocksMoveKind::put_down, b->first, std::nullopt};
  }
  if (text.rfind("stack ", 0) == 0) {
    const auto b = block_after("the ", 0);
    if (!b) return std::nullopt;
    const auto t = block_after("the ", b->second);
    if (!t) return std::nullopt;
    return BlocksMove{BlocksMoveKind::stack, b->first, t->first};
  }
  if (text.rfind("unstack ", 0) == 0) {
    const auto b = block_after("the ", 0);
    if (!b) return std::nullopt;
    const auto t = block_after("the ", b->second);
    if (!t) return std::nullopt;
    return BlocksMove{BlocksMoveKind::unstack, b->first, t->first};
  }
  return std::nullopt;
}

}  // namespace biplan
