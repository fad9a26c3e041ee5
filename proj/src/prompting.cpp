#include "biplan/prompting.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "biplan/domains.hpp"
#include "biplan/rng.hpp"
#include "biplan/search.hpp"

namespace biplan {

namespace {

std::string join_ints(const std::vector<int>& values, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string node_tuple(const std::vector<int>& nodes) { return "(" + join_ints(nodes, ", ") + ")"; }

std::string fn_list(const std::vector<ArrayFn>& fns) {
  std::string out = "[";
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (i > 0) out += ", ";
    out += array_fn_name(fns[i]);
  }
  out += "]";
  return out;
}

std::string trim_copy(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  lines.push_back(cur);
  return lines;
}

const char* graph_kind_phrase(const Problem& problem) {
  return problem.graph().directed ? "a directed" : "an undirected";
}

}  // namespace

// ---------------------------------------------------------------------------
// Exemplars
// ---------------------------------------------------------------------------

std::vector<GraphExemplar> make_graph_sampling_exemplars(const GraphProblemParams& params,
                                                         std::uint64_t seed, int count) {
  std::vector<GraphExemplar> out;
  for (int k = 0; k < count; ++k) {
    GraphExemplar ex;
    ex.problem = generate_graph_problem(params, mix_seed(seed, seed_tag::sample_exemplars, k));
    const auto result = bfs_plan(ex.problem, Direction::forward);
    ex.path = node_sequence(ex.problem, *result.plan);
    out.push_back(std::move(ex));
  }
  return out;
}

namespace {

// A corrupted copy of the oracle path: one interior node replaced.
std::vector<int> corrupt_path(const std::vector<int>& path, int n, Rng& rng) {
  std::vector<int> bad = path;
  const int slot = 1 + rng.below_int(static_cast<int>(path.size()) - 2);
  int replacement = rng.below_int(n - 1);
  if (replacement >= bad[slot]) ++replacement;
  bad[slot] = replacement;
  return bad;
}

// A valid alternative path, when one exists without the first oracle edge.
std::optional<std::vector<int>> alternative_path(const Problem& problem,
                                                 const std::vector<int>& path) {
  const Graph& g = problem.graph();
  std::vector<std::pair<int, int>> edges = g.edges;
  std::erase_if(edges, [&](const std::pair<int, int>& e) {
    if (g.directed) return e.first == path[0] && e.second == path[1];
    return (e.first == path[0] && e.second == path[1]) ||
           (e.first == path[1] && e.second == path[0]);
  });
  Problem pruned = problem;
  pruned.action_space = make_graph(g.n, g.directed, edges);
  const auto result = bfs_plan(pruned, Direction::forward);
  if (!result.plan) return std::nullopt;
  return node_sequence(pruned, *result.plan);
}

}  // namespace

std::vector<GraphVerifyExemplar> make_graph_verify_exemplars(const GraphProblemParams& params,
                                                             std::uint64_t seed, int count) {
  std::vector<GraphVerifyExemplar> out;
  for (int k = 0; k < count; ++k) {
    GraphVerifyExemplar ex;
    ex.problem = generate_graph_problem(params, mix_seed(seed, seed_tag::verify_exemplars, k));
    const auto oracle = node_sequence(ex.problem, *bfs_plan(ex.problem, Direction::forward).plan);
    Rng rng(mix_seed(seed, seed_tag::verify_exemplars, 100 + k));
    const int n = ex.problem.graph().n;
    switch (k % 3) {
      case 0: {
        const auto alt = alternative_path(ex.problem, oracle);
        ex.options.push_back(alt ? *alt : corrupt_path(oracle, n, rng));
        ex.options.push_back(oracle);
        break;
      }
      case 1: {
        ex.options.push_back(corrupt_path(oracle, n, rng));
        ex.options.push_back(oracle);
        ex.options.push_back(corrupt_path(oracle, n, rng));
        break;
      }
      default: {
        ex.options.push_back(oracle);
        ex.options.push_back(corrupt_path(oracle, n, rng));
        ex.options.push_back(oracle);
        ex.options.push_back(corrupt_path(oracle, n, rng));
        break;
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<ArrayExemplar> make_array_sampling_exemplars(const ArrayProblemParams& params,
                                                         std::uint64_t seed, int count) {
  std::vector<ArrayExemplar> out;
  for (int k = 0; k < count; ++k) {
    const auto instance =
        generate_array_instance(params, mix_seed(seed, seed_tag::sample_exemplars, k));
    ArrayExemplar ex;
    ex.initial = std::get<ArrayState>(instance.problem.initial_state);
    ex.goal = *instance.problem.goal.equals;
    ex.plan = instance.hidden_plan;
    ex.steps = instance.intermediates;
    out.push_back(std::move(ex));
  }
  return out;
}

namespace {

ArrayState mismatched_final(const ArrayState& actual) {
  ArrayState other(actual.rbegin(), actual.rend());
  if (other != actual) return other;
  other = actual;
  other.front() = (other.front() + 1) % 10;
  return other;
}

// A plan from the set that reaches a cut with unequal halves, plus the
// initial array it fails on.
std::optional<std::pair<ArrayState, std::vector<ArrayFn>>> cut_failure_case(
    const ArrayProblemParams& params, std::uint64_t seed) {
  std::vector<ArrayFn> size_preserving;
  for (ArrayFn f : params.function_set) {
    if (f != ArrayFn::cut && f != ArrayFn::repeat) size_preserving.push_back(f);
  }
  std::sort(size_preserving.begin(), size_preserving.end());
  Rng rng(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    ArrayState initial(2 * params.init_length);
    for (int& v : initial) v = params.value_min + rng.below_int(params.value_max - params.value_min + 1);
    std::vector<ArrayFn> plan;
    if (!size_preserving.empty()) {
      const ArrayFn f = size_preserving[attempt % size_preserving.size()];
      plan = {f, ArrayFn::cut, f};
    } else {
      plan = {ArrayFn::cut, ArrayFn::repeat, ArrayFn::repeat};
    }
    // The walk must be legal up to the cut and fail exactly there.
    ArrayState cur = initial;
    bool failed_at_cut = false;
    for (ArrayFn f : plan) {
      if (f == ArrayFn::cut) {
        const std::size_t half = cur.size() / 2;
        const bool equal = cur.size() % 2 == 0 &&
                           std::equal(cur.begin(), cur.begin() + half, cur.begin() + half);
        if (!equal) failed_at_cut = true;
        break;
      }
      Problem scratch;
      scratch.domain_kind = DomainKind::array;
      scratch.action_space = ArraySpace{params.function_set};
      cur = std::get<ArrayState>(apply_action(scratch, cur, f));
    }
    if (failed_at_cut) return std::make_pair(initial, plan);
  }
  return std::nullopt;
}

}  // namespace

std::vector<ArrayVerifyExemplar> make_array_verify_exemplars(const ArrayProblemParams& params,
                                                             std::uint64_t seed) {
  std::vector<ArrayVerifyExemplar> out;
  std::vector<ArrayInstance> instances;
  for (int k = 0; k < 4; ++k) {
    instances.push_back(
        generate_array_instance(params, mix_seed(seed, seed_tag::verify_exemplars, k)));
  }
  auto actual_of = [](const ArrayInstance& inst) {
    return inst.intermediates.empty() ? std::get<ArrayState>(inst.problem.initial_state)
                                      : inst.intermediates.back();
  };

  // Mirrors the paper's mix: mismatch, correct, cut failure, correct.
  ArrayVerifyExemplar ex0{std::get<ArrayState>(instances[0].problem.initial_state),
                          mismatched_final(actual_of(instances[0])), instances[0].hidden_plan};
  out.push_back(ex0);
  out.push_back(ArrayVerifyExemplar{std::get<ArrayState>(instances[1].problem.initial_state),
                                    actual_of(instances[1]), instances[1].hidden_plan});
  const bool has_cut =
      std::count(params.function_set.begin(), params.function_set.end(), ArrayFn::cut) > 0;
  if (has_cut) {
    const auto failure = cut_failure_case(params, mix_seed(seed, seed_tag::verify_exemplars, 50));
    if (failure) {
      ArrayState desired(failure->first.begin(), failure->first.begin() + failure->first.size() / 2);
      out.push_back(ArrayVerifyExemplar{failure->first, desired, failure->second});
    }
  }
  if (out.size() < 3) {
    out.push_back(ArrayVerifyExemplar{std::get<ArrayState>(instances[2].problem.initial_state),
                                      mismatched_final(actual_of(instances[2])),
                                      instances[2].hidden_plan});
  }
  out.push_back(ArrayVerifyExemplar{std::get<ArrayState>(instances[3].problem.initial_state),
                                    actual_of(instances[3]), instances[3].hidden_plan});
  return out;
}

// ---------------------------------------------------------------------------
// Graph prompts
// ---------------------------------------------------------------------------

std::string build_graph_sampling_prompt(const Problem& problem, Direction direction,
                                        const std::vector<GraphExemplar>& exemplars,
                                        const std::optional<std::string>& problem_text_override) {
  const bool directed = problem.graph().directed;
  std::string out = "You will be given ";
  out += graph_kind_phrase(problem);
  out += " graph search problem with a few examples.\n\n";
  int k = 1;
  for (const auto& ex : exemplars) {
    out += "** Example " + std::to_string(k++) + " **\n";
    out += render_incident(ex.problem);
    out += "\n\nInitial: " + std::to_string(std::get<int>(ex.problem.initial_state));
    out += "\nGoal: " + std::to_string(*ex.problem.goal.at_node);
    std::vector<int> path = ex.path;
    if (direction == Direction::backward) std::reverse(path.begin(), path.end());
    out += "\nShortest Path: " + node_tuple(path) + "\n\n";
  }
  out += "** Current problem **\n";
  out += problem_text_override ? *problem_text_override : render_incident(problem);
  out += "\n\nInitial: " + std::to_string(std::get<int>(problem.initial_state));
  out += "\nGoal: " + std::to_string(*problem.goal.at_node);
  out += "\n\n";
  out += direction == Direction::forward ? "Plan the shortest path from initial to goal node"
                                         : "Plan the shortest path from goal to initial node";
  out += " for the this **";
  out += directed ? "directed" : "undirected";
  out += "** graph. Follow the format 'Shorest Path: (...)' and do not output anything else.";
  return out;
}

namespace {

struct OptionCheck {
  std::string line;
  bool valid = false;
  int length = 0;  // node count
};

OptionCheck check_option(const Problem& problem, char letter, const std::vector<int>& nodes) {
  const Graph& g = problem.graph();
  const char* verb = g.directed ? "points to" : "is connected to";
  OptionCheck check;
  check.length = static_cast<int>(nodes.size());
  std::string line(1, letter);
  line += ": ";
  bool valid = true;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const int u = nodes[i];
    const int v = nodes[i + 1];
    std::vector<int> adjacency = u >= 0 && u < g.n ? g.out_neighbors(u) : std::vector<int>{};
    const bool ok = std::count(adjacency.begin(), adjacency.end(), v) > 0;
    const std::string adj = "[" + join_ints(adjacency, ", ") + "]";
    line += "check " + std::to_string(u) + " to " + std::to_string(v) + ", " + std::to_string(u) +
            " " + verb + " " + adj + ", " + std::to_string(v) + " in " + adj + "? " +
            (ok ? "True" : "False");
    if (!ok) {
      line += " - invalid path";
      valid = false;
      break;
    }
    line += i + 2 < nodes.size() ? "; " : " - valid path of length " + std::to_string(check.length);
  }
  check.valid = valid;
  check.line = line;
  return check;
}

std::string verification_block(const Problem& problem,
                               const std::vector<std::vector<int>>& options) {
  std::string out = "Which one is the correct shortest path?\n";
  for (std::size_t i = 0; i < options.size(); ++i) {
    out += static_cast<char>('A' + i);
    out += ". " + node_tuple(options[i]) + "\n";
  }
  out += "Checking each options step by step:\n";
  std::vector<OptionCheck> checks;
  for (std::size_t i = 0; i < options.size(); ++i) {
    checks.push_back(check_option(problem, static_cast<char>('A' + i), options[i]));
    out += checks.back().line + "\n";
  }
  // Footer mirrors the listing, picking the last valid option of minimal
  // length.
  int best = -1;
  std::string valid_list;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (!checks[i].valid) continue;
    if (!valid_list.empty()) valid_list += ", ";
    valid_list += static_cast<char>('A' + i);
    valid_list += " with length length " + std::to_string(checks[i].length);
    if (best < 0 || checks[i].length <= checks[best].length) best = static_cast<int>(i);
  }
  out += "Valid options: " + valid_list + ". Thus the correct shortest option is ";
  out += static_cast<char>('A' + best);
  return out;
}

}  // namespace

std::string build_graph_verification_prompt(const Problem& problem,
                                            const std::vector<GraphVerifyExemplar>& exemplars,
                                            const std::vector<std::vector<int>>& candidates) {
  if (candidates.empty()) throw Error("build_graph_verification_prompt: no candidates");
  if (candidates.size() > 26)
    throw TooManyCandidates("more than 26 candidate plans for one verification prompt");
  const bool directed = problem.graph().directed;
  std::string out = "You will be given ";
  out += graph_kind_phrase(problem);
  out += " graph search problem with a few examples.\n\n";
  int k = 1;
  for (const auto& ex : exemplars) {
    out += "** Example " + std::to_string(k++) + " **\n";
    out += render_incident(ex.problem);
    out += "\n\nInitial: " + std::to_string(std::get<int>(ex.problem.initial_state));
    out += "\nGoal: " + std::to_string(*ex.problem.goal.at_node);
    out += "\n\n";
    out += verification_block(ex.problem, ex.options);
    out += "\n\n";
  }
  out += "** Current problem **\n";
  out += render_incident(problem);
  out += "\n\nInitial: " + std::to_string(std::get<int>(problem.initial_state));
  out += "\nGoal: " + std::to_string(*problem.goal.at_node);
  out += "\nWhich one is the correct shortest path?\n";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out += static_cast<char>('A' + i);
    out += ". " + node_tuple(candidates[i]) + "\n";
  }
  out += "Remember the graph is ";
  out += directed ? "directed" : "undirected";
  out +=
      ". Follow the exact same format as the examples and check each options step by step. Begin "
      "with 'Checking each options step by step:'";
  return out;
}

namespace {

// Listing's fixed worked example; identical for all problems.
const char* kReorderExample = R"(** Example **
Nodes 8 points to node 0
Nodes 4, 10 points to node 1
Nodes 5 points to node 2
Nodes 1, 9, 11 points to node 3
Nodes 5, 6, 11 points to node 4
Nodes  points to node 5
Nodes 2, 9 points to node 6
Nodes 1, 10 points to node 7
Nodes 2, 4, 10 points to node 8
Nodes 10 points to node 9
Nodes 2, 3, 7 points to node 10
Nodes 1, 2 points to node 11

Full procedure:
1. List all directed edges
8 -> 0
4 -> 1
10 -> 1
5 -> 2
1 -> 3
9 -> 3
11 -> 3
5 -> 4
6 -> 4
11 -> 4
2 -> 6
9 -> 6
1 -> 7
10 -> 7
2 -> 8
4 -> 8
10 -> 8
10 -> 9
2 -> 10
3 -> 10
7 -> 10
1 -> 11
2 -> 11
2. Group the edges for each node
0 ->
1 -> 3, 7, 11
2 -> 6, 8, 10, 11
3 -> 10
4 -> 1, 8
5 -> 2, 4
6 -> 4
7 -> 10
9 -> 3, 6
10 -> 1, 7, 8, 9
11 -> 3, 4
3. Convert the edges into the text format
Node 1 points to nodes 3, 7, 11
Node 2 points to nodes 6, 8, 10, 11
Node 3 points to node 10
Node 4 points to nodes 1, 8
Node 5 points to nodes 2, 4
Node 6 points to node 4
Node 7 points to node 10
Node 8 points to node 0
Node 9 points to nodes 3, 6
Node 10 points to nodes 1, 7, 8, 9
Node 11 points to nodes 3, 4)";

}  // namespace

std::string build_reorder_prompt(const std::string& flipped_graph_text) {
  std::string out = "You will be asked to re-order a directed graph.\n\n";
  out += kReorderExample;
  out += "\n\n** Current Graph **\n";
  out += flipped_graph_text;
  out +=
      "\n\nRemember the edges are directed. Please re-order this directed graph with the exact "
      "same full procedure as the example. Follow the same format and do not output anything "
      "else.";
  return out;
}

// ---------------------------------------------------------------------------
// Array prompts
// ---------------------------------------------------------------------------

namespace {

const char* array_fn_def(ArrayFn f) {
  switch (f) {
    case ArrayFn::reverse:
      return "def reverse(x):\n  # reverse the sequence\n  return x[::-1]";
    case ArrayFn::shift_left:
      return "def shift_left(x):\n  # shift the sequence to the left by one\n  return x[1:] + "
             "x[:1]";
    case ArrayFn::shift_right:
      return "def shift_right(x):\n  # shift the sequence to the right by one\n  return [x[-1]] + "
             "x[:-1]";
    case ArrayFn::swap:
      return "def swap(x):\n  # swap the first and last elements\n  return x[-1:] + x[1:-1] + "
             "x[0:1]";
    case ArrayFn::repeat:
      return "def repeat(x):\n  # repeat the sequence once\n  return x + x";
    case ArrayFn::cut:
      return "def cut(x):\n  # cut the sequence in half\n  assert x[:len(x) // 2] == x[len(x) // "
             "2:]\n  return x[:len(x) // 2]";
  }
  return "";
}

std::string count_word(int n) {
  switch (n) {
    case 1: return "one";
    case 2: return "two";
    case 3: return "three";
    case 4: return "four";
    case 5: return "five";
    case 6: return "six";
    default: return std::to_string(n);
  }
}

// Verification walk in the listing's expression style. Stops at a failing cut.
struct ArrayWalk {
  std::vector<std::string> lines;
  bool cut_failed = false;
  ArrayState final_state;
};

ArrayWalk array_verify_walk(const ArrayState& initial, const std::vector<ArrayFn>& plan) {
  ArrayWalk walk;
  ArrayState cur = initial;
  for (ArrayFn f : plan) {
    const std::string a = render_array(cur);
    if (f == ArrayFn::cut) {
      const std::size_t half = cur.size() / 2;
      const ArrayState h1(cur.begin(), cur.begin() + half);
      const ArrayState h2(cur.begin() + half, cur.end());
      if (cur.size() % 2 == 0 && h1 == h2) {
        walk.lines.push_back("  cut: " + a + " half -> " + render_array(h1) + " and " +
                             render_array(h2) + " equal -> " + render_array(h1));
        cur = h1;
      } else {
        walk.lines.push_back("  cut: " + a + " half -> " + render_array(h1) + " and " +
                             render_array(h2) + " not equal -> cut failed");
        walk.cut_failed = true;
        return walk;
      }
      continue;
    }
    Problem scratch;
    scratch.domain_kind = DomainKind::array;
    scratch.action_space = ArraySpace{{f}};
    const ArrayState next = std::get<ArrayState>(apply_action(scratch, cur, f));
    const std::string b = render_array(next);
    switch (f) {
      case ArrayFn::shift_left:
        walk.lines.push_back("  shift_left: " + a + "[1:] + " + a + "[:1] -> " + b);
        break;
      case ArrayFn::shift_right:
        walk.lines.push_back("  shift_right: [" + a + "[-1]] + " + a + "[:-1] -> " + b);
        break;
      case ArrayFn::repeat:
        walk.lines.push_back("  repeat: " + a + " + " + a + " -> " + b);
        break;
      case ArrayFn::reverse:
        walk.lines.push_back("  reverse: " + a + "[::-1] -> " + b);
        break;
      case ArrayFn::swap:
        walk.lines.push_back("  swap: " + a + "[-1:] + " + a + "[1:-1] + " + a + "[0:1] -> " + b);
        break;
      default: break;
    }
    cur = next;
  }
  walk.final_state = cur;
  return walk;
}

std::string array_verify_block(const ArrayState& initial, const ArrayState& desired,
                               const std::vector<ArrayFn>& plan) {
  std::string out = "Initial: " + render_array(initial) + "\n";
  out += "Desired Final: " + render_array(desired) + "\n";
  out += "Functions: " + fn_list(plan) + "\n";
  out += "Verify initial to final steps:\n";
  const ArrayWalk walk = array_verify_walk(initial, plan);
  for (const auto& line : walk.lines) out += line + "\n";
  if (walk.cut_failed) {
    out += "  Incorrect\n";
    return out;
  }
  const bool match = walk.final_state == desired;
  out += "  actual final: " + render_array(walk.final_state) +
         ", desired final: " + render_array(desired) + (match ? ", match\n" : ", does not match\n");
  out += match ? "  Correct\n" : "  Incorrect\n";
  return out;
}

}  // namespace

std::string array_prompt_header(const std::vector<ArrayFn>& functions, int plan_length) {
  std::string out = "A random sequence of " + count_word(plan_length) +
                    " of the below functions transform the initial array into the final array.\n"
                    "Given initial and final, output the sequence of transformations.\n";
  // The listing presents definitions in this fixed order.
  for (ArrayFn f : {ArrayFn::reverse, ArrayFn::shift_left, ArrayFn::shift_right, ArrayFn::swap,
                    ArrayFn::repeat, ArrayFn::cut}) {
    if (std::count(functions.begin(), functions.end(), f) == 0) continue;
    out += "\n";
    out += array_fn_def(f);
    out += "\n";
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string build_array_sampling_prompt(const Problem& problem, Direction direction,
                                        const std::vector<ArrayExemplar>& exemplars) {
  const auto& space = problem.array_space();
  const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params);
  std::string out = array_prompt_header(space.functions, params ? params->plan_length : 3);
  out += "\n\n***** Examples:\n";
  for (const auto& ex : exemplars) {
    out += "Initial: " + render_array(ex.initial) + "\n";
    out += "Final: " + render_array(ex.goal) + "\n";
    if (direction == Direction::forward) {
      out += "Initial to Final Steps:\n";
      for (std::size_t i = 0; i < ex.plan.size(); ++i) {
        out += "  " + std::string(array_fn_name(ex.plan[i])) + ": " + render_array(ex.steps[i]) +
               "\n";
      }
      out += "Functions: " + fn_list(ex.plan) + "\n\n";
    } else {
      // Backward exemplars walk from the final array back to the initial one
      // with the inverse functions.
      std::vector<ArrayFn> back;
      for (auto it = ex.plan.rbegin(); it != ex.plan.rend(); ++it) {
        back.push_back(std::get<ArrayFn>(invert_action(DomainKind::array, *it)));
      }
      out += "Final to Initial Steps:\n";
      ArrayState cur = ex.goal;
      for (ArrayFn f : back) {
        Problem scratch;
        scratch.domain_kind = DomainKind::array;
        scratch.action_space = ArraySpace{{f}};
        cur = std::get<ArrayState>(apply_action(scratch, cur, f));
        out += "  " + std::string(array_fn_name(f)) + ": " + render_array(cur) + "\n";
      }
      out += "Functions: " + fn_list(back) + "\n\n";
    }
  }
  out += "***** Current problem:\n";
  out += "Initial: " + render_array(std::get<ArrayState>(problem.initial_state)) + "\n";
  out += "Final: " + render_array(*problem.goal.equals) + "\n";
  out += "Please solve with the exact same format. Do not repeat the problem.";
  return out;
}

std::string build_array_verification_prompt(const Problem& problem,
                                            const std::vector<ArrayVerifyExemplar>& exemplars,
                                            const std::vector<ArrayFn>& candidate) {
  const auto& space = problem.array_space();
  const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params);
  std::string out = array_prompt_header(space.functions, params ? params->plan_length : 3);
  out += "\n\n***** Examples:\n";
  for (const auto& ex : exemplars) {
    out += array_verify_block(ex.initial, ex.desired, ex.plan);
    out += "\n";
  }
  out += "***** Current problem:\n";
  out += "Initial: " + render_array(std::get<ArrayState>(problem.initial_state)) + "\n";
  out += "Final: " + render_array(*problem.goal.equals) + "\n";
  out += "Functions: " + fn_list(candidate) + "\n";
  out += "Please verify initial to final steps with the exactly same format. Do not repeat the "
         "problem.";
  return out;
}

// ---------------------------------------------------------------------------
// Blocks prompts
// ---------------------------------------------------------------------------

std::string blocks_prompt_header() {
  return "You will play with a set of blocks where you need to arrange the blocks into stacks.\n"
         "\n"
         "[POSSIBLE ACTIONS]\n"
         "Pick up a block\n"
         "Unstack a block from on top of another block\n"
         "Put down a block\n"
         "Stack a block on top of another block\n"
         "\n"
         "[RULES]\n"
         "Only pick up or unstack one block at a time.\n"
         "Only pick up or unstack a block if hand is empty.\n"
         "Only pick up a block if the block is on the table and the block is clear. A block is "
         "clear if the block has no other blocks on top of it and if the block is not picked up.\n"
         "Only unstack a block from on top of another block if the block being unstacked was "
         "really on top of the other block.\n"
         "Only unstack a block from on top of another block if the block being unstacked is "
         "clear.\n"
         "Once you pick up or unstack a block, you are holding the block.\n"
         "Only put down a block that you are holding.\n"
         "Only stack a block on top of another block if you are holding the block being stacked.\n"
         "Only stack a block on top of another block if the block onto which you are stacking the "
         "block is clear.\n"
         "Once you put down or stack a block, your hand becomes empty.\n"
         "Once you stack a block on top of a second block, the second block is no longer clear.";
}

namespace {

const char* kSummarizeExampleStatement =
    "As initial conditions you have that, the red block is clear, the yellow block is clear, the "
    "hand is empty, the red block is on top of the blue block, the yellow block is on top of the "
    "orange block, the blue block is on the table and the orange block is on the table.\n"
    "Your goal is to have that the orange block is on top of the red block.";

const char* kPlanExampleForward =
    "[STATEMENT]\n"
    "init state (each clause is a stack): orange on red on blue; yellow\n"
    "goal: red on blue; yellow on orange.\n"
    "\n"
    "Your plan is as follows:\n"
    "\n"
    "[PLAN]\n"
    "unstack the orange block from on top of the red block\n"
    "(orange on hand; red on blue; yellow)\n"
    "put down the orange block\n"
    "(red on blue; yellow; orange)\n"
    "pick up the yellow block\n"
    "(yellow on hand; red on blue; orange)\n"
    "stack the yellow block on top of the orange block\n"
    "(red on blue; yellow on orange) Goal satisfied\n"
    "[PLAN END]";

const char* kPlanExampleBackward =
    "[STATEMENT]\n"
    "init state (each clause is a stack): orange on red on blue; yellow\n"
    "goal: red on blue; yellow on orange.\n"
    "\n"
    "Your backward plan, from the goal back to the init state, is as follows:\n"
    "\n"
    "[PLAN]\n"
    "unstack the yellow block from on top of the orange block\n"
    "(yellow on hand; red on blue; orange)\n"
    "put down the yellow block\n"
    "(red on blue; orange; yellow)\n"
    "pick up the orange block\n"
    "(orange on hand; red on blue; yellow)\n"
    "stack the orange block on top of the red block\n"
    "(orange on red on blue; yellow) Init satisfied\n"
    "[PLAN END]";

}  // namespace

std::string build_blocks_summarize_prompt(const Problem& problem) {
  std::string statement = problem.statement_text;
  if (statement.empty()) {
    statement = render_planbench_statement(std::get<BlocksState>(problem.initial_state),
                                           problem.goal.clauses);
  }
  std::string out = blocks_prompt_header();
  out += "\n\n[[EXAMPLE]]\n\n[STATEMENT]\n";
  out += kSummarizeExampleStatement;
  out += "\n\nFirst you summarize the init state and goal:\n\n[PLAN]\n";
  out += "init state (each clause is a stack): red on blue; yellow on orange\n";
  out += "goal: orange on red\n";
  out += "[PLAN END]\n\n[[CURRENT PROBLEM]]\n\n[STATEMENT]\n";
  out += statement;
  out +=
      "\n\nPlease follow the format and generate the init state and goal for the current problem. "
      "Make sure the stacks are combined if they should, e.g., 'red on blue; yellow on red' "
      "should be combined as 'yellow on red on blue'.";
  return out;
}

std::string build_blocks_plan_prompt(const std::string& compact_init,
                                     const std::string& compact_goal, Direction direction) {
  std::string out = "[[EXAMPLE]]\n\n";
  out += direction == Direction::forward ? kPlanExampleForward : kPlanExampleBackward;
  out += "\n\n[[CURRENT PROBLEM]]\n\n[STATEMENT]\n";
  out += "init state (each clause is a stack): " + compact_init + "\n";
  out += "goal: " + compact_goal + "\n\n";
  if (direction == Direction::forward) {
    out += "Please follow the format and generate your plan for the current problem. Start with "
           "[PLAN]";
  } else {
    out += "Please follow the format and generate your backward plan for the current problem, "
           "starting from the goal and ending at the init state. Start with [PLAN]";
  }
  return out;
}

std::string build_blocks_verification_prompt(const std::string& compact_init,
                                             const std::string& compact_goal,
                                             const std::vector<BlocksMove>& candidate) {
  std::string out = blocks_prompt_header();
  out += "\n\n[[EXAMPLE]]\n\n[STATEMENT]\n";
  out += "init state (each clause is a stack): orange on red on blue; yellow\n";
  out += "goal: red on blue; yellow on orange.\n\n";
  out += "Candidate plan:\n";
  out += "unstack the orange block from on top of the red block\n";
  out += "put down the orange block\n";
  out += "pick up the yellow block\n";
  out += "stack the yellow block on top of the orange block\n\n";
  out += "Verify each step:\n";
  out += "  unstack the orange block from on top of the red block: orange is clear and hand is "
         "empty -> (orange on hand; red on blue; yellow)\n";
  out += "  put down the orange block: holding orange -> (red on blue; yellow; orange)\n";
  out += "  pick up the yellow block: yellow is on the table and clear and hand is empty -> "
         "(yellow on hand; red on blue; orange)\n";
  out += "  stack the yellow block on top of the orange block: holding yellow and orange is clear "
         "-> (red on blue; yellow on orange)\n";
  out += "  actual final: red on blue; yellow on orange, goal: red on blue; yellow on orange, "
         "match\n";
  out += "  Correct\n\n";
  out += "[[CURRENT PROBLEM]]\n\n[STATEMENT]\n";
  out += "init state (each clause is a stack): " + compact_init + "\n";
  out += "goal: " + compact_goal + "\n\n";
  out += "Candidate plan:\n";
  for (const auto& move : candidate) out += render_blocks_move(move) + "\n";
  out += "\nPlease verify each step with the exact same format, and finish with 'Correct' or "
         "'Incorrect'.";
  return out;
}

// ---------------------------------------------------------------------------
// Reason prompts
// ---------------------------------------------------------------------------

std::string build_reason_prompt(const Problem& problem) {
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      std::string out = "You will be given ";
      out += graph_kind_phrase(problem);
      out += " graph search problem with a few examples. You will decide which search direction "
             "is easier to solve for the shortest path from the initial to the goal.\n\n";
      out += "** Current problem **\n";
      out += render_incident(problem);
      out += "\n\nInitial: " + std::to_string(std::get<int>(problem.initial_state));
      out += "  Goal: " + std::to_string(*problem.goal.at_node);
      out += "\n\nIf there is a bottleneck (nodes with few edges connected) at one end of the "
             "graph, then it is easier to solve for the shortest path from that end. Which "
             "direction (forward, from the initial, or backward, from the goal) has the "
             "bottleneck? Summarize your reasoning in a short paragraph without going through all "
             "the nodes, and finish your answer with 'Direction with bottleneck: "
             "<forward/backward>'.";
      return out;
    }
    case DomainKind::array: {
      const auto& space = problem.array_space();
      const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params);
      std::string out = array_prompt_header(space.functions, params ? params->plan_length : 3);
      out += "\n\n***** Current problem:\n";
      out += "Initial: " + render_array(std::get<ArrayState>(problem.initial_state)) + "\n";
      out += "Final: " + render_array(*problem.goal.equals) + "\n";
      out += "\nThe problem can be solved either in the forward direction (from initial to "
             "final), or by flipping the problem first (final becomes initial, initial becomes "
             "final) and then solving in the new forward direction. Which direction would you "
             "like to solve in? Think about possible bottleneck where fewer search steps are "
             "needed. Summarize your reasoning in a short paragraph without going through the "
             "intermediate steps and arrays, and finish your answer with 'Direction with "
             "bottleneck: <forward/flipped>'.";
      return out;
    }
    case DomainKind::blocks: {
      std::string statement = problem.statement_text;
      if (statement.empty()) {
        statement = render_planbench_statement(std::get<BlocksState>(problem.initial_state),
                                               problem.goal.clauses);
      }
      std::string out = blocks_prompt_header();
      out += "\n\n[STATEMENT]\n";
      out += statement;
      out += "\n\nThe problem can be solved either in the forward direction (from initial "
             "condition to goal), or by flipping the problem first (goal becomes initial, initial "
             "becomes goal) and then solving in the new forward direction. Which direction would "
             "you like to solve in? Think about possible bottleneck where fewer search steps are "
             "needed. Summarize your reasoning in a short paragraph without going through the "
             "intermediate steps and states, and finish your answer with 'Direction with "
             "bottleneck: <forward/flipped>'.";
      return out;
    }
  }
  throw Error("build_reason_prompt: unknown domain");
}

// ---------------------------------------------------------------------------
// Dispatchers
// ---------------------------------------------------------------------------

std::string build_sampling_prompt(const Problem& problem, Direction direction,
                                  std::uint64_t prompt_seed,
                                  const std::optional<std::string>& problem_text_override) {
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const auto* params = std::get_if<GraphProblemParams>(&problem.gen_params);
      if (!params) throw Error("graph problem carries no generation params for exemplars");
      return build_graph_sampling_prompt(
          problem, direction, make_graph_sampling_exemplars(*params, prompt_seed),
          problem_text_override);
    }
    case DomainKind::array: {
      const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params);
      if (!params) throw Error("array problem carries no generation params for exemplars");
      return build_array_sampling_prompt(problem, direction,
                                         make_array_sampling_exemplars(*params, prompt_seed));
    }
    case DomainKind::blocks:
      throw Error("blocks sampling uses the summarize/plan flow");
  }
  throw Error("build_sampling_prompt: unknown domain");
}

std::string build_verification_prompt(const Problem& problem, const std::vector<Plan>& candidates,
                                      std::uint64_t prompt_seed) {
  switch (problem.domain_kind) {
    case DomainKind::graph: {
      const auto* params = std::get_if<GraphProblemParams>(&problem.gen_params);
      if (!params) throw Error("graph problem carries no generation params for exemplars");
      std::vector<std::vector<int>> sequences;
      for (const auto& plan : candidates) sequences.push_back(node_sequence(problem, plan));
      return build_graph_verification_prompt(
          problem, make_graph_verify_exemplars(*params, prompt_seed), sequences);
    }
    case DomainKind::array: {
      if (candidates.size() != 1) throw Error("array verification takes exactly one candidate");
      const auto* params = std::get_if<ArrayProblemParams>(&problem.gen_params);
      if (!params) throw Error("array problem carries no generation params for exemplars");
      std::vector<ArrayFn> fns;
      for (const auto& a : candidates[0].actions) fns.push_back(std::get<ArrayFn>(a));
      return build_array_verification_prompt(
          problem, make_array_verify_exemplars(*params, prompt_seed), fns);
    }
    case DomainKind::blocks: {
      if (candidates.size() != 1) throw Error("blocks verification takes exactly one candidate");
      std::vector<BlocksMove> moves;
      for (const auto& a : candidates[0].actions) moves.push_back(std::get<BlocksMove>(a));
      return build_blocks_verification_prompt(
          render_blocks_compact(std::get<BlocksState>(problem.initial_state)),
          render_goal_compact(problem.goal.clauses), moves);
    }
  }
  throw Error("build_verification_prompt: unknown domain");
}

// ---------------------------------------------------------------------------
// Parsers
// ---------------------------------------------------------------------------

namespace {

std::optional<std::vector<int>> last_node_tuple(const std::string& text) {
  // Last "Sho[r]test Path:" marker wins; models sometimes restate.
  std::size_t marker = std::string::npos;
  for (const char* token : {"Shortest Path:", "Shorest Path:"}) {
    std::size_t pos = text.rfind(token);
    if (pos != std::string::npos && (marker == std::string::npos || pos > marker)) marker = pos;
  }
  if (marker == std::string::npos) return std::nullopt;
  const auto open = text.find('(', marker);
  if (open == std::string::npos) return std::nullopt;
  const auto close = text.find(')', open);
  if (close == std::string::npos) return std::nullopt;
  std::vector<int> nodes;
  std::string token;
  for (std::size_t i = open + 1; i <= close; ++i) {
    const char c = text[i];
    if (c == ',' || c == ')') {
      if (!token.empty()) {
        try {
          nodes.push_back(std::stoi(token));
        } catch (...) {
          return std::nullopt;
        }
        token.clear();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      token += c;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      return std::nullopt;
    }
  }
  if (nodes.empty()) return std::nullopt;
  return nodes;
}

std::optional<std::vector<ArrayFn>> last_fn_list(const std::string& text) {
  const auto marker = text.rfind("Functions:");
  if (marker == std::string::npos) return std::nullopt;
  const auto open = text.find('[', marker);
  if (open == std::string::npos) return std::nullopt;
  const auto close = text.find(']', open);
  if (close == std::string::npos) return std::nullopt;
  std::vector<ArrayFn> fns;
  std::string token;
  auto flush = [&]() -> bool {
    const std::string name = trim_copy(token);
    token.clear();
    if (name.empty()) return true;
    const auto f = array_fn_from_name(name);
    if (!f) return false;
    fns.push_back(*f);
    return true;
  };
  for (std::size_t i = open + 1; i <= close; ++i) {
    const char c = text[i];
    if (c == ',' || c == ']') {
      if (!flush()) return std::nullopt;
    } else {
      token += c;
    }
  }
  if (fns.empty()) return std::nullopt;
  return fns;
}

}  // namespace

std::optional<ParsedPlan> parse_plan_output(const std::string& text, DomainKind kind,
                                            Direction direction, Frame frame) {
  ParsedPlan parsed;
  parsed.raw_text = text;
  parsed.plan.direction = direction;
  parsed.plan.frame = frame;
  switch (kind) {
    case DomainKind::graph: {
      const auto nodes = last_node_tuple(text);
      if (!nodes) return std::nullopt;
      parsed.plan = plan_from_node_sequence(*nodes, direction, frame);
      return parsed;
    }
    case DomainKind::array: {
      const auto fns = last_fn_list(text);
      if (!fns) return std::nullopt;
      for (ArrayFn f : *fns) parsed.plan.actions.push_back(f);
      return parsed;
    }
    case DomainKind::blocks: {
      const auto begin = text.rfind("[PLAN]");
      if (begin == std::string::npos) return std::nullopt;
      auto end = text.find("[PLAN END]", begin);
      if (end == std::string::npos) end = text.size();
      const std::string body = text.substr(begin + 6, end - begin - 6);
      std::vector<State> states;
      for (const auto& raw : split_lines(body)) {
        const std::string line = trim_copy(raw);
        if (line.empty()) continue;
        if (line.front() == '(') {
          auto close = line.rfind(')');
          if (close == std::string::npos) continue;
          const auto state = parse_blocks_compact(line.substr(1, close - 1));
          if (state) states.push_back(*state);
          continue;
        }
        const auto move = parse_blocks_move(line);
        if (move) parsed.plan.actions.push_back(*move);
      }
      if (parsed.plan.actions.empty()) return std::nullopt;
      if (states.size() == parsed.plan.actions.size()) parsed.intermediate_states = states;
      return parsed;
    }
  }
  return std::nullopt;
}

Verdict parse_verdict(const std::string& text, DomainKind kind, int num_candidates) {
  Verdict verdict;
  if (kind == DomainKind::graph) {
    const char* marker = "correct shortest option is";
    const auto pos = text.rfind(marker);
    if (pos == std::string::npos) return verdict;
    std::size_t i = pos + std::string(marker).size();
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || !std::isupper(static_cast<unsigned char>(text[i]))) return verdict;
    const int index = text[i] - 'A';
    if (index < 0 || index >= num_candidates) return verdict;
    verdict.parsed = true;
    verdict.chosen_index = index;
    verdict.correct = true;
    return verdict;
  }
  // Array/blocks: the last bare Correct/Incorrect line wins.
  std::optional<bool> result;
  for (const auto& raw : split_lines(text)) {
    const std::string line = trim_copy(raw);
    if (line == "Correct") result = true;
    if (line == "Incorrect") result = false;
  }
  if (!result) return verdict;
  verdict.parsed = true;
  verdict.correct = *result;
  return verdict;
}

DirectionChoice parse_direction_choice(const std::string& text) {
  DirectionChoice choice;
  const char* marker = "Direction with bottleneck:";
  const auto pos = text.rfind(marker);
  if (pos == std::string::npos) return choice;
  std::string token;
  for (std::size_t i = pos + std::string(marker).size(); i < text.size(); ++i) {
    const char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      token += static_cast<char>(std::tolower(c));
    } else if (!token.empty()) {
      break;
    } else if (c == '\n') {
      break;
    }
  }
  choice.rationale_text = trim_copy(text.substr(0, pos));
  if (token == "forward") {
    choice.parsed = true;
    choice.choice = DirectionPreference::forward;
  } else if (token == "backward" || token == "flipped") {
    choice.parsed = true;
    choice.choice = DirectionPreference::backward_or_flipped;
  }
  return choice;
}

std::optional<std::string> parse_reorder_output(const std::string& text) {
  const char* marker = "3. Convert the edges into the text format";
  const auto pos = text.rfind(marker);
  if (pos == std::string::npos) return std::nullopt;
  auto start = text.find('\n', pos);
  if (start == std::string::npos) return std::nullopt;
  ++start;
  std::string block = text.substr(start);
  // Keep only the contiguous "Node ..." lines.
  std::string out;
  for (const auto& raw : split_lines(block)) {
    const std::string line = trim_copy(raw);
    if (line.rfind("Node ", 0) != 0) break;
    if (!out.empty()) out += "\n";
    out += line;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<StateSummary> parse_summarize_output(const std::string& text) {
  StateSummary summary;
  bool have_init = false;
  bool have_goal = false;
  for (const auto& raw : split_lines(text)) {
    const std::string line = trim_copy(raw);
    const char* init_marker = "init state (each clause is a stack):";
    const char* goal_marker = "goal:";
    if (line.rfind(init_marker, 0) == 0) {
      summary.init_compact = trim_copy(line.substr(std::string(init_marker).size()));
      have_init = true;
    } else if (line.rfind(goal_marker, 0) == 0) {
      std::string goal = trim_copy(line.substr(std::string(goal_marker).size()));
      while (!goal.empty() && goal.back() == '.') goal.pop_back();
      summary.goal_compact = goal;
      have_goal = true;
    }
  }
  if (!have_init || !have_goal) return std::nullopt;
  return summary;
}

// ---------------------------------------------------------------------------
// Output renderers
// ---------------------------------------------------------------------------

std::string render_graph_plan_output(const std::vector<int>& nodes) {
  return "Shortest Path: " + node_tuple(nodes);
}

std::string render_array_plan_output(const std::vector<ArrayFn>& fns) {
  return "Functions: " + fn_list(fns);
}

std::string render_blocks_plan_output(const std::vector<BlocksMove>& moves) {
  std::string out = "[PLAN]\n";
  for (const auto& move : moves) out += render_blocks_move(move) + "\n";
  out += "[PLAN END]";
  return out;
}

std::string render_summarize_output(const std::string& compact_init,
                                    const std::string& compact_goal) {
  return "[PLAN]\ninit state (each clause is a stack): " + compact_init + "\ngoal: " +
         compact_goal + "\n[PLAN END]";
}

std::string render_reorder_response(const Problem& original_problem) {
  const Graph& g = original_problem.graph();
  const Graph flipped = g.reversed();
  std::string out = "Full procedure:\n1. List all directed edges\n";
  // Edges in the order of the flipped-incident lines (original source order).
  for (int v = 0; v < g.n; ++v) {
    for (int t : g.out_neighbors(v)) {
      out += std::to_string(t) + " -> " + std::to_string(v) + "\n";
    }
  }
  out += "2. Group the edges for each node\n";
  for (int v = 0; v < flipped.n; ++v) {
    const auto targets = flipped.out_neighbors(v);
    if (targets.empty()) {
      out += std::to_string(v) + " ->\n";
    } else {
      out += std::to_string(v) + " -> " + join_ints(targets, ", ") + "\n";
    }
  }
  out += "3. Convert the edges into the text format\n";
  for (int v = 0; v < flipped.n; ++v) {
    const auto targets = flipped.out_neighbors(v);
    if (targets.empty()) continue;
    out += "Node " + std::to_string(v) + (targets.size() == 1 ? " points to node " : " points to nodes ") +
           join_ints(targets, ", ") + "\n";
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

std::string render_graph_verification_response(const Problem& problem,
                                               const std::vector<std::vector<int>>& options,
                                               std::optional<int> chosen) {
  std::string out = "Checking each options step by step:\n";
  for (std::size_t i = 0; i < options.size(); ++i) {
    out += check_option(problem, static_cast<char>('A' + i), options[i]).line + "\n";
  }
  if (chosen) {
    out += "Thus the correct shortest option is ";
    out += static_cast<char>('A' + *chosen);
  } else {
    out += "Thus none of the options is a correct shortest path";
  }
  return out;
}

std::string render_array_verification_response(const Problem& problem,
                                               const std::vector<ArrayFn>& candidate,
                                               bool correct) {
  const auto& initial = std::get<ArrayState>(problem.initial_state);
  const auto& desired = *problem.goal.equals;
  std::string out = "Verify initial to final steps:\n";
  const ArrayWalk walk = array_verify_walk(initial, candidate);
  for (const auto& line : walk.lines) out += line + "\n";
  if (!walk.cut_failed) {
    const bool match = walk.final_state == desired;
    out += "  actual final: " + render_array(walk.final_state) +
           ", desired final: " + render_array(desired) +
           (match ? ", match\n" : ", does not match\n");
  }
  out += correct ? "  Correct" : "  Incorrect";
  return out;
}

std::string render_blocks_verification_response(const Problem& problem,
                                                const std::vector<BlocksMove>& candidate,
                                                bool correct) {
  std::string out = "Verify each step:\n";
  State state = problem.initial_state;
  bool broke = false;
  for (const auto& move : candidate) {
    try {
      state = apply_action(problem, state, move);
      out += "  " + render_blocks_move(move) + " -> (" +
             render_blocks_compact(std::get<BlocksState>(state)) + ")\n";
    } catch (const IllegalAction& e) {
      out += "  " + render_blocks_move(move) + ": " + e.what() + "\n";
      broke = true;
      break;
    }
  }
  if (!broke) {
    const bool match = goal_satisfied(problem, state);
    out += "  actual final: " + render_blocks_compact(std::get<BlocksState>(state)) +
           ", goal: " + render_goal_compact(problem.goal.clauses) +
           (match ? ", match\n" : ", does not match\n");
  }
  out += correct ? "  Correct" : "  Incorrect";
  return out;
}

std::string render_reason_response(DomainKind kind, DirectionPreference preference) {
  const bool forward = preference == DirectionPreference::forward;
  std::string token;
  if (kind == DomainKind::graph) {
    token = forward ? "forward" : "backward";
  } else {
    token = forward ? "forward" : "flipped";
  }
  std::string side = forward ? "initial" : "goal";
  return "The neighborhood around the " + side +
         " looks more constrained, so fewer search steps are needed from there. Direction with "
         "bottleneck: " +
         token;
}

}  // namespace biplan
