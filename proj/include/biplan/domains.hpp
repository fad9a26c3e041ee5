#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biplan/core.hpp"

namespace biplan {

// ---------------------------------------------------------------------------
// Graph Planning
// ---------------------------------------------------------------------------

// G(n, rho) with rejection sampling until the shortest path from s0 to g has
// exactly required_path_nodes nodes. Pair draws happen in lexicographic order,
// one uniform draw per pair, so seeds are portable. Throws GenerationExhausted
// after max_rejections failed samples.
Problem generate_graph_problem(const GraphProblemParams& params, std::uint64_t seed);

// Incident representation: one line per node in ascending order, "is connected
// to nodes" (undirected) or "points to nodes" (directed). Nodes without
// out-edges still emit a line, with a trailing space after "nodes".
std::string render_incident(const Problem& problem);

// Pre-reorder text of a flipped directed graph: each original line "Node v
// points to nodes a, b" becomes "Nodes a, b points to node v".
std::string render_flipped_incident(const Problem& original_problem);

// ---------------------------------------------------------------------------
// Array Transformation
// ---------------------------------------------------------------------------

struct ArrayInstance {
  Problem problem;
  std::vector<ArrayFn> hidden_plan;        // generator's plan, initial -> goal
  std::vector<ArrayState> intermediates;   // state after each hidden step
};

// Initial array sampled uniformly; plan_length functions with repeat at most
// once; when cut is sampled the construction inverts the functions, reverses
// the order, applies them, and swaps the initial and goal arrays so that
// every cut precondition holds.
ArrayInstance generate_array_instance(const ArrayProblemParams& params, std::uint64_t seed);
Problem generate_array_problem(const ArrayProblemParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Blocksworld
// ---------------------------------------------------------------------------

// Parses a PlanBench statement ("As initial conditions ... Your goal is to
// have that ...") into a full initial state and a possibly partial goal.
// Throws ParseError on unknown clauses, InconsistentState on impossible ones.
Problem import_planbench(const std::string& statement_text);

// Statement text for a (state, goal) pair in the PlanBench grammar.
std::string render_planbench_statement(const BlocksState& initial,
                                       const std::vector<BlockClause>& goal);

// Seeded 4-block instance rendered as a statement and imported through
// import_planbench, so generated problems exercise the same grammar as
// benchmark files.
Problem generate_blocks_problem(std::uint64_t seed);

// Listing-style legality check for one move; never throws.
bool blocks_step_legal(const BlocksState& state, const BlocksMove& move);

// ---------------------------------------------------------------------------
// Flipping
// ---------------------------------------------------------------------------

// The goal becomes the initial state and vice versa. Directed graphs get every
// edge reversed; undirected graphs, arrays, and blocks keep their action
// space. Partial blocks goals are completed by the on-table policy.
Problem flip_problem(const Problem& problem);

}  // namespace biplan
