#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "biplan/errors.hpp"

namespace biplan {

enum class DomainKind { graph, array, blocks };
enum class Frame { original, flipped };
enum class Direction { forward, backward };

const char* to_string(DomainKind k);
const char* to_string(Frame f);
const char* to_string(Direction d);

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

// Block colors in canonical (alphabetical) order.
enum class Block : int { blue = 0, orange = 1, red = 2, yellow = 3 };

const char* block_name(Block b);
std::optional<Block> block_from_name(const std::string& name);

// Stacks are columns of blocks, bottom first. The vector order is the
// presentation order used when rendering; equality ignores it.
struct BlocksState {
  std::vector<std::vector<Block>> stacks;
  std::optional<Block> holding;

  bool clear(Block b) const;          // top of a stack and not held
  bool on_table(Block b) const;       // bottom of its stack
  std::optional<Block> below(Block b) const;  // block directly under b
  std::vector<Block> universe() const;        // all blocks, sorted

  // Order-independent canonical form (stacks sorted by bottom block).
  std::vector<std::vector<Block>> canonical_stacks() const;
};

bool operator==(const BlocksState& a, const BlocksState& b);

using ArrayState = std::vector<int>;
using State = std::variant<int, ArrayState, BlocksState>;

bool states_equal(const State& a, const State& b);
std::string state_key(const State& s);  // stable encoding for visited sets

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

struct GraphMove {
  int from = 0;
  int to = 0;
};

// Alphabetical; this is also the canonical expansion order.
enum class ArrayFn { cut, repeat, reverse, shift_left, shift_right, swap };

const char* array_fn_name(ArrayFn f);
std::optional<ArrayFn> array_fn_from_name(const std::string& name);

enum class BlocksMoveKind { pick_up, put_down, stack, unstack };

struct BlocksMove {
  BlocksMoveKind kind = BlocksMoveKind::pick_up;
  Block block = Block::blue;
  std::optional<Block> target;  // stack: onto; unstack: from
};

using Action = std::variant<GraphMove, ArrayFn, BlocksMove>;

bool actions_equal(const Action& a, const Action& b);
std::string action_key(const Action& a);

// ---------------------------------------------------------------------------
// Goals
// ---------------------------------------------------------------------------

// on(block, support) when support is set, on-table(block) otherwise.
struct BlockClause {
  Block block = Block::blue;
  std::optional<Block> support;
};

bool operator==(const BlockClause& a, const BlockClause& b);

// Clause-set goal: graph = at(node), array = equals(array), blocks = all
// clauses hold. Blocksworld goals may be partial, so "satisfies" is subset
// semantics across all three domains.
struct Goal {
  std::optional<int> at_node;
  std::optional<ArrayState> equals;
  std::vector<BlockClause> clauses;
};

// ---------------------------------------------------------------------------
// Problems
// ---------------------------------------------------------------------------

struct Graph {
  int n = 0;
  bool directed = false;
  std::vector<std::pair<int, int>> edges;  // canonical: sorted, undirected as u<v

  std::vector<int> out_neighbors(int v) const;  // ascending
  std::vector<int> in_neighbors(int v) const;   // ascending; == out for undirected
  bool has_edge(int u, int v) const;
  Graph reversed() const;  // every edge flipped; no-op for undirected
};

Graph make_graph(int n, bool directed, std::vector<std::pair<int, int>> edges);

struct ArraySpace {
  std::vector<ArrayFn> functions;  // sorted, unique
};

struct BlocksSpace {
  std::vector<Block> blocks;  // universe, sorted
};

using ActionSpace = std::variant<Graph, ArraySpace, BlocksSpace>;

struct GraphProblemParams {
  int n = 12;
  double rho = 0.2;
  bool directed = false;
  int required_path_nodes = 5;
  int max_rejections = 20000;
};

struct ArrayProblemParams {
  std::vector<ArrayFn> function_set;
  int init_length = 4;
  int plan_length = 3;
  int value_min = 0;
  int value_max = 9;
  int max_rejections = 10000;
};

using GenParams = std::variant<std::monostate, GraphProblemParams, ArrayProblemParams>;

struct Problem {
  DomainKind domain_kind = DomainKind::graph;
  Frame direction_frame = Frame::original;
  std::uint64_t seed = 0;
  int t_max = 1;
  State initial_state;
  Goal goal;
  ActionSpace action_space;
  GenParams gen_params;
  std::string statement_text;  // blocks: the PlanBench statement this came from

  const Graph& graph() const;
  const ArraySpace& array_space() const;
  const BlocksSpace& blocks_space() const;
};

// ---------------------------------------------------------------------------
// Plans and verdicts
// ---------------------------------------------------------------------------

struct Plan {
  std::vector<Action> actions;
  Direction direction = Direction::forward;
  Frame frame = Frame::original;
};

bool plans_equal(const Plan& a, const Plan& b);  // action sequences only
std::string plan_key(const Plan& p);

// Node sequence view of a graph plan: (from0, to0, to1, ...).
std::vector<int> node_sequence(const Problem& problem, const Plan& plan);
Plan plan_from_node_sequence(const std::vector<int>& nodes, Direction direction, Frame frame);

struct ParsedPlan {
  Plan plan;
  std::optional<std::vector<State>> intermediate_states;
  std::string raw_text;
};

struct PlanVerdict {
  bool valid = false;
  std::optional<bool> optimal;   // graph problems only
  std::optional<int> failure_step;  // present iff not valid
  std::string reason;
};

// ---------------------------------------------------------------------------
// Domain contract
// ---------------------------------------------------------------------------

// Successor state; throws IllegalAction when the precondition fails
// (missing edge, unequal halves for cut, block not clear, ...).
State apply_action(const Problem& problem, const State& state, const Action& action);

// Static inverse: if s -a-> s' then s' -invert(a)-> s. For directed graphs the
// inverse lives in the flipped problem's action space.
Action invert_action(DomainKind kind, const Action& action);

bool goal_satisfied(const Problem& problem, const State& state);

// Legal actions at a state in canonical order (node index ascending, function
// alphabetical, block color alphabetical).
std::vector<Action> legal_actions(const Problem& problem, const State& state);

// Moves of the backward system at a state: actions a' = invert(a) that are
// legal at s, i.e. one per predecessor. For directed graphs these walk
// in-edges; for the other domains the inverse alphabet is used directly.
std::vector<Action> inverse_legal_actions(const Problem& problem, const State& state);

// Applies a backward-system move. Directed graph moves walk edges in reverse
// (the flipped problem's action space); everything else delegates to
// apply_action.
State apply_inverse_action(const Problem& problem, const State& state, const Action& action);

// The concrete state a backward search starts from. Blocks goals may be
// partial; the completion policy keeps every clause and puts all unplaced
// blocks directly on the table with the hand empty.
State backward_start_state(const Problem& problem);

class OptimalityOracle {
 public:
  virtual ~OptimalityOracle() = default;
  virtual std::optional<int> shortest_path_length(const Problem& problem) const = 0;
};

// Ground-truth verifier f. Expects a forward plan in the problem's frame;
// backward plans must be reversed by the caller first. All failures are
// encoded in the verdict. For graph problems `optimal` is set against the
// oracle; for array/blocks validity suffices and `optimal` stays empty.
PlanVerdict validate_plan(const Problem& problem, const Plan& plan, const OptimalityOracle& oracle);

// ---------------------------------------------------------------------------
// Text forms shared by prompts and the PlanBench grammar
// ---------------------------------------------------------------------------

std::string render_array(const ArrayState& a);                     // "[4, 0, 0, 5]"
std::optional<ArrayState> parse_array(const std::string& text);

// Compact stack form: "orange on red on blue; yellow", held block first as
// "orange on hand".
std::string render_blocks_compact(const BlocksState& state);
std::optional<BlocksState> parse_blocks_compact(const std::string& text);

// Goal clauses merged into maximal chains: "yellow on red on orange; blue".
std::string render_goal_compact(const std::vector<BlockClause>& clauses);
std::optional<std::vector<BlockClause>> parse_goal_compact(const std::string& text);

// PlanBench action text, e.g. "unstack the blue block from on top of the
// orange block".
std::string render_blocks_move(const BlocksMove& move);
std::optional<BlocksMove> parse_blocks_move(const std::string& line);

}  // namespace biplan
