#pragma once

#include <json.hpp>

#include "biplan/core.hpp"
#include "biplan/search.hpp"

// Canonical JSON forms of the planning records. Ordered maps keep archive
// bytes stable across runs and worker counts.

namespace biplan {

using Json = nlohmann::ordered_json;

Json to_json(const Action& action, DomainKind kind);
std::optional<Action> action_from_json(const Json& j, DomainKind kind);

Json to_json(const State& state);
Json to_json(const Goal& goal);
Json to_json(const Plan& plan, DomainKind kind);
std::optional<Plan> plan_from_json(const Json& j, DomainKind kind);

Json to_json(const PlanVerdict& verdict);
Json to_json(const SearchCost& cost);
Json to_json(const Problem& problem);
std::optional<Problem> problem_from_json(const Json& j);

}  // namespace biplan
