#pragma once

#include "lma3/scenario.hpp"
#include "lma3/world.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lma3 {

// Chat-completion plumbing shared by every language-model component: one
// request shape, a content-addressed response cache, retry with backoff, and
// interchangeable backends (remote endpoint, cache replay, scripted oracle).

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

enum class OracleRole { Relabel, Reward, Goalgen };

const char* oracle_role_name(OracleRole role);

// Ground truth the scripted oracle answers from. Remote backends ignore it
// and it never enters the cache key, so switching backends cannot change
// which cache entries a run touches.
struct OracleContext {
  std::optional<OracleRole> role;
  std::vector<GroundEvent> events;        // relabel and reward
  std::vector<std::string> goals;         // reward
  std::vector<std::string> instructions;  // goalgen
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 1024;
  OracleContext oracle;
};

struct ChatResponse {
  std::string content;
  std::string backend_tag;  // remote | cache | oracle
  int token_estimate = 0;   // chars/4 heuristic, both directions
  bool truncated = false;
};

class GatewayError : public std::runtime_error {
 public:
  GatewayError(const std::string& what, bool retryable)
      : std::runtime_error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

class ReplayMiss : public GatewayError {
 public:
  explicit ReplayMiss(const std::string& key)
      : GatewayError("cache-only mode and no cached response for key " + key, false) {}
};

class TruncatedResponse : public GatewayError {
 public:
  TruncatedResponse() : GatewayError("response still truncated after max-token retry", false) {}
};

// 64-bit FNV-1a, used to derive deterministic sampling seeds from text.
std::uint64_t fnv1a64(std::string_view data);

// 128-bit FNV-1a as a 32-char lowercase hex digest; the cache key function.
std::string fnv1a128_hex(std::string_view data);

// Canonical serialization of (model, temperature, messages); the input to
// cache_key and to the oracle's sampling seed. max_tokens and oracle context
// are deliberately excluded: a truncation retry must find the same cache
// slot, and the oracle context is backend-private ground truth.
std::string request_fingerprint(const ChatRequest& req);

std::string cache_key(const ChatRequest& req);

struct CachedEntry {
  std::string content;
  bool truncated = false;
};

// Append-only JSONL store, one {key, request, response, timestamp} object per
// line. Loading tolerates a trailing partial line (a killed process may have
// been mid-append); later entries for a key win. Thread-safe.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path file);

  std::optional<CachedEntry> lookup(const std::string& key) const;
  void store(const std::string& key, const ChatRequest& req, const ChatResponse& res);

  size_t size() const;
  size_t skipped_lines() const { return skipped_; }
  const std::filesystem::path& path() const { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::map<std::string, CachedEntry> entries_;
  std::ofstream out_;
  size_t skipped_ = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual ChatResponse complete(const ChatRequest& req) = 0;
  virtual std::string name() const = 0;
};

// Deterministic stand-in for the three LM components, answered from the
// request's OracleContext. Total: never throws, never truncates.
class OracleBackend : public Backend {
 public:
  explicit OracleBackend(Scenario sc) : sc_(std::move(sc)) {}
  ChatResponse complete(const ChatRequest& req) override;
  std::string name() const override { return "oracle"; }

 private:
  Scenario sc_;
};

// Scripted completion for one role. The goalgen sample is seeded by a hash of
// the prompt messages, so identical prompts always compose the same goal.
std::string oracle_complete(const Scenario& sc, OracleRole role, const OracleContext& ctx,
                            std::uint64_t sample_seed);

struct HttpConfig {
  std::string base_url;           // e.g. https://api.example.com
  std::string api_key;            // sent as a bearer token when non-empty
  std::string path = "/v1/chat/completions";
  int timeout_seconds = 120;
  int max_in_flight = 4;
};

// OpenAI-style chat-completions client. Transport failures, HTTP 429 and 5xx
// throw retryable GatewayErrors; other statuses and malformed bodies throw
// non-retryable ones. Concurrent calls beyond max_in_flight queue up.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpConfig config);
  ~HttpBackend() override;
  ChatResponse complete(const ChatRequest& req) override;
  std::string name() const override { return "remote"; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct RetryPolicy {
  int attempts = 5;
  std::chrono::milliseconds base_delay{1000};  // doubled per attempt
  double jitter = 0.2;                         // +-20%
};

enum class GatewayMode { Normal, CacheOnly };

// A caller-supplied tag for the audit log; never affects the response.
struct CallTag {
  std::string role;  // relabel | reward | goalgen
  int episode = 0;
  int seed = 0;
};

struct GatewayOptions {
  GatewayMode mode = GatewayMode::Normal;
  RetryPolicy retry;
  std::filesystem::path audit_path;  // calls.jsonl; empty disables auditing
  std::function<void(std::chrono::milliseconds)> sleeper;  // injectable for tests
  std::uint64_t jitter_seed = 0;
};

// Cache-first dispatcher. Misses go to the backend under the retry policy;
// truncated responses get one retry with max_tokens doubled. Every call is
// appended to the audit log with its CallTag.
class Gateway {
 public:
  Gateway(std::shared_ptr<ResponseCache> cache, std::shared_ptr<Backend> backend,
          GatewayOptions options);

  ChatResponse complete(const ChatRequest& req, const CallTag& tag = {});

  long backend_calls() const;  // completions that bypassed the cache

 private:
  ChatResponse dispatch(const ChatRequest& req);

  std::shared_ptr<ResponseCache> cache_;
  std::shared_ptr<Backend> backend_;
  GatewayOptions options_;
  mutable std::mutex mu_;
  std::ofstream audit_;
  long backend_calls_ = 0;
  std::uint64_t jitter_state_;
};

// Reads LMA3_BACKEND (oracle | remote), LMA3_API_BASE, LMA3_API_KEY and
// LMA3_MODEL. Unset or "oracle" yields the scripted oracle.
std::shared_ptr<Backend> backend_from_env(const Scenario& sc);

}  // namespace lma3
