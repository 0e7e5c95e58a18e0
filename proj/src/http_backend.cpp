#include "lma3/gateway.hpp"

#include <httplib.h>
#include <json.hpp>

#include <semaphore>

namespace lma3 {

using nlohmann::json;

struct HttpBackend::Impl {
  HttpConfig config;
  std::counting_semaphore<4096> in_flight;

  explicit Impl(HttpConfig c) : config(std::move(c)), in_flight(config.max_in_flight) {}
};

HttpBackend::HttpBackend(HttpConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  if (impl_->config.max_in_flight < 1)
    throw std::invalid_argument("max_in_flight must be at least 1");
}

HttpBackend::~HttpBackend() = default;

namespace {

struct SemaphoreGuard {
  std::counting_semaphore<4096>& sem;
  explicit SemaphoreGuard(std::counting_semaphore<4096>& s) : sem(s) { sem.acquire(); }
  ~SemaphoreGuard() { sem.release(); }
};

}  // namespace

ChatResponse HttpBackend::complete(const ChatRequest& req) {
  SemaphoreGuard guard(impl_->in_flight);
  const HttpConfig& cfg = impl_->config;

  // One client per request: httplib clients are cheap and this sidesteps
  // their unclear thread-safety story.
  httplib::Client client(cfg.base_url);
  client.set_connection_timeout(cfg.timeout_seconds, 0);
  client.set_read_timeout(cfg.timeout_seconds, 0);
  client.set_write_timeout(cfg.timeout_seconds, 0);

  httplib::Headers headers;
  if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);

  json messages = json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", req.model},
               {"messages", messages},
               {"temperature", req.temperature},
               {"max_tokens", req.max_tokens}};

  auto result = client.Post(cfg.path, headers, body.dump(), "application/json");
  if (!result)
    throw GatewayError("transport failure: " + httplib::to_string(result.error()), true);
  if (result->status == 429 || result->status >= 500)
    throw GatewayError("http status " + std::to_string(result->status), true);
  if (result->status != 200)
    throw GatewayError("http status " + std::to_string(result->status) + ": " +
                           result->body.substr(0, 200),
                       false);

  json parsed = json::parse(result->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
    throw GatewayError("malformed completion body: " + result->body.substr(0, 200), false);
  const json& choice = parsed["choices"][0];
  if (!choice.contains("message") || !choice["message"].contains("content"))
    throw GatewayError("completion missing message content", false);

  ChatResponse res;
  res.content = choice["message"]["content"].get<std::string>();
  res.backend_tag = "remote";
  res.truncated = choice.value("finish_reason", "stop") == "length";
  size_t chars = res.content.size();
  for (const auto& m : req.messages) chars += m.content.size();
  res.token_estimate = static_cast<int>(chars / 4);
  return res;
}

}  // namespace lma3
