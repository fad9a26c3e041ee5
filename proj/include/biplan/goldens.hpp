#pragma once

#include <string>
#include <vector>

#include "biplan/core.hpp"

namespace biplan {

// Pinned problems for the golden prompt files. The graph and array instances
// are the appendix's own worked instances, reconstructed edge for edge.
Problem golden_undirected_graph();
Problem golden_directed_graph();
Problem golden_array_problem();
Problem golden_array_reason_problem();
Problem golden_blocks_problem();

struct GoldenItem {
  std::string name;  // file stem
  std::string text;
};

// Every prompt template instantiated on the pinned problems with a fixed
// exemplar seed; byte-stable across runs and platforms.
std::vector<GoldenItem> golden_prompts();

}  // namespace biplan
