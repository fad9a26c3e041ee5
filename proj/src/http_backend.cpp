#include <chrono>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "biplan/backends.hpp"

namespace biplan {

std::string chat_completion_body(const CompletionRequest& request,
                                 const HttpEndpointConfig& config) {
  nlohmann::ordered_json body;
  body["model"] = request.model_id.empty() ? config.model_id : request.model_id;
  nlohmann::ordered_json messages = nlohmann::ordered_json::array();
  if (config.system_message) {
    messages.push_back({{"role", "system"}, {"content", *config.system_message}});
  }
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  body["messages"] = messages;
  body["temperature"] = request.temperature;
  if (config.max_tokens) body["max_tokens"] = *config.max_tokens;
  return body.dump();
}

std::string parse_chat_completion(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw MalformedResponse("response is not JSON");
  }
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
    throw MalformedResponse("response has no choices");
  const auto& first = j["choices"][0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string())
    throw MalformedResponse("choice has no message content");
  if (j.contains("usage") && j["usage"].is_object()) {
    std::cerr << "[biplan] token usage: " << j["usage"].dump() << "\n";
  }
  return first["message"]["content"].get<std::string>();
}

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

HttpBackend::HttpBackend(HttpEndpointConfig config)
    : config_(std::move(config)), tokens_(config_.rate_limit_per_minute), last_refill_ms_(now_ms()) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  api_key_ = key ? key : "";
}

std::string HttpBackend::id() const { return "http:" + config_.model_id; }

void HttpBackend::acquire_rate_token() {
  while (true) {
    {
      std::lock_guard<std::mutex> lock(limiter_mutex_);
      const std::int64_t now = now_ms();
      tokens_ = std::min(config_.rate_limit_per_minute,
                         tokens_ + (now - last_refill_ms_) / 60000.0 * config_.rate_limit_per_minute);
      last_refill_ms_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(250));
  }
}

std::string HttpBackend::complete(const CompletionRequest& request, const CallContext&) {
  if (api_key_.empty())
    throw AuthError("no API key; set " + config_.api_key_env);
  const std::string body = chat_completion_body(request, config_);

  int backoff_s = 1;
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::seconds(backoff_s));
      backoff_s *= 2;
    }
    acquire_rate_token();

    httplib::Client client(config_.base_url);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    const auto result =
        client.Post("/v1/chat/completions", headers, body, "application/json");

    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 401 || result->status == 403)
      throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(result->status) + ")");
    if (result->status == 429 || result->status >= 500) {
      last_error = "HTTP " + std::to_string(result->status);
      double retry_after = 0.0;
      if (result->has_header("Retry-After")) {
        try {
          retry_after = std::stod(result->get_header_value("Retry-After"));
        } catch (...) {
        }
      }
      if (attempt == config_.max_retries)
        throw BackendUnavailable("endpoint unavailable after retries: " + last_error, retry_after);
      continue;
    }
    if (result->status != 200)
      throw MalformedResponse("unexpected HTTP status " + std::to_string(result->status) + ": " +
                              result->body);
    return parse_chat_completion(result->body);
  }
  throw BackendUnavailable("endpoint unavailable after retries: " + last_error);
}

}  // namespace biplan
