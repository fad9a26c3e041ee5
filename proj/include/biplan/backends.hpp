#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "biplan/core.hpp"
#include "biplan/prompting.hpp"

namespace biplan {

struct Message {
  std::string role;  // "system" or "user"
  std::string content;
};

struct CompletionRequest {
  std::vector<Message> messages;  // at least one user message
  double temperature = 0.0;       // [0, 2]
  std::string model_id;
  std::optional<std::uint64_t> seed;  // simulated backend only
};

enum class TemplateKind { sampling, verification, reorder, reason, blocks_summarize };

const char* to_string(TemplateKind k);

// Structured context recorded alongside every prompt. Prompts are always
// built and persisted so golden tests and live mode share one code path; the
// simulated planner branches on this context instead of parsing text.
struct CallContext {
  TemplateKind template_kind = TemplateKind::sampling;
  const Problem* original_problem = nullptr;  // original frame
  const Problem* framed_problem = nullptr;    // problem in the sampled frame
  Direction direction = Direction::forward;
  Frame frame = Frame::original;
  int attempt_index = 0;  // 1-based sampling attempts; 0 for setup calls
  std::uint64_t trial_seed = 0;
  std::vector<Plan> candidates;  // verification: normalized original-frame plans
};

// The opaque planner p_theta. Implementations must be deterministic at
// temperature 0 (exactly for the simulated planner, best effort over HTTP)
// and shareable across concurrent trial workers.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const CompletionRequest& request, const CallContext& context) = 0;
  virtual std::string id() const = 0;
};

// ---------------------------------------------------------------------------
// Simulated planner
// ---------------------------------------------------------------------------

struct SimulatedPlannerParams {
  double eps_forward = 0.08;   // per-step corruption probability
  double backward_bias = 2.0;  // beta; eps_backward = min(1, beta * eps_forward)
  double temp_gain = 2.5;      // kappa; eps_eff = min(1, eps_dir * (1 + kappa * T))
  double verify_noise = 0.05;  // nu; verdict flip probability
  double flip_overhead = 0.0;  // extra per-step corruption in the flipped frame
  double reason_match_undirected = 0.785;  // direction-preference accuracy
};

// Noisy oracle search with a configurable backward handicap. Sampling runs
// the BFS oracle in the requested direction/frame and corrupts each step with
// probability eps_eff, replacing it with a different action drawn uniformly
// from the legal moves at that state (single-option bottleneck steps cannot be
// corrupted). Verification applies the ground-truth check and flips the
// verdict with probability nu. Reorder requests are answered exactly.
//
// Corruption draws are common random numbers per (trial, frame, direction,
// slot): the temperature-0 attempt and the later-temperature attempts each
// have one fixed variant in the original frame, while flipped-frame attempts
// draw fresh per attempt. This reproduces the persistent-error behaviour of
// backward sampling and the extra diversity that flipping brings, and makes
// results independent of scheduling order.
class SimulatedPlanner : public Backend {
 public:
  explicit SimulatedPlanner(SimulatedPlannerParams params = {}) : params_(params) {}

  std::string complete(const CompletionRequest& request, const CallContext& context) override;
  std::string id() const override;

  const SimulatedPlannerParams& params() const { return params_; }

 private:
  SimulatedPlannerParams params_;
};

// ---------------------------------------------------------------------------
// HTTP backend (chat completions)
// ---------------------------------------------------------------------------

struct HttpEndpointConfig {
  std::string base_url;  // e.g. https://api.openai.com
  std::string model_id = "gpt-4o";
  std::string api_key_env = "BIPLAN_API_KEY";
  std::optional<std::string> system_message;  // pass-through; unset by default
  std::optional<int> max_tokens;
  int max_retries = 3;                  // backoff 1s, 2s, 4s
  double rate_limit_per_minute = 30.0;  // token bucket
  int timeout_seconds = 120;
};

// Request body and response parsing are split out so they can be tested
// without a network.
std::string chat_completion_body(const CompletionRequest& request, const HttpEndpointConfig& config);
std::string parse_chat_completion(const std::string& body);

class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpEndpointConfig config);

  std::string complete(const CompletionRequest& request, const CallContext& context) override;
  std::string id() const override;

 private:
  void acquire_rate_token();

  HttpEndpointConfig config_;
  std::string api_key_;
  std::mutex limiter_mutex_;
  double tokens_;
  std::int64_t last_refill_ms_;
};

}  // namespace biplan
