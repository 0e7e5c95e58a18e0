#include "lma3/gateway.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <thread>

namespace lma3 {

using nlohmann::json;

namespace {

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json request_to_json(const ChatRequest& req) {
  json messages = json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", req.model},
          {"temperature", req.temperature},
          {"max_tokens", req.max_tokens},
          {"messages", messages}};
}

int estimate_tokens(const ChatRequest& req, const std::string& content) {
  size_t chars = content.size();
  for (const auto& m : req.messages) chars += m.content.size();
  return static_cast<int>(chars / 4);
}

// splitmix64 step; enough randomness for backoff jitter.
double next_unit(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<double>(z >> 11) / 9007199254740992.0;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a128_hex(std::string_view data) {
  using u128 = unsigned __int128;
  const u128 offset = (static_cast<u128>(0x6c62272e07bb0142ULL) << 64) | 0x62b821756295c58dULL;
  const u128 prime = (static_cast<u128>(0x0000000001000000ULL) << 64) | 0x000000000000013bULL;
  u128 h = offset;
  for (unsigned char c : data) {
    h ^= c;
    h *= prime;
  }
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx",
                static_cast<unsigned long long>(h >> 64),
                static_cast<unsigned long long>(h & 0xffffffffffffffffULL));
  return buf;
}

std::string request_fingerprint(const ChatRequest& req) {
  char temp[32];
  std::snprintf(temp, sizeof(temp), "%.4f", req.temperature);
  std::string out = req.model;
  out += '\n';
  out += temp;
  out += '\n';
  for (const auto& m : req.messages) {
    out += m.role;
    out += '\x1f';
    out += m.content;
    out += '\x1e';
  }
  return out;
}

std::string cache_key(const ChatRequest& req) { return fnv1a128_hex(request_fingerprint(req)); }

ResponseCache::ResponseCache(std::filesystem::path file) : file_(std::move(file)) {
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json entry = json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.contains("key") || !entry.contains("response")) {
      ++skipped_;  // a kill mid-append can leave one ragged line
      continue;
    }
    const json& res = entry["response"];
    entries_[entry["key"].get<std::string>()] = {
        res.value("content", std::string()), res.value("truncated", false)};
  }
  bool ragged_tail = false;
  if (in.is_open()) {
    in.clear();
    in.seekg(0, std::ios::end);
    if (in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      ragged_tail = in.get() != '\n';
    }
  }
  in.close();
  out_.open(file_, std::ios::app);
  if (!out_.good()) throw std::runtime_error("cannot open cache file " + file_.string());
  if (ragged_tail) {
    out_ << '\n';  // seal a line a killed process left half-written
    out_.flush();
  }
}

std::optional<CachedEntry> ResponseCache::lookup(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResponseCache::store(const std::string& key, const ChatRequest& req,
                          const ChatResponse& res) {
  json line = {{"key", key},
               {"request", request_to_json(req)},
               {"response", {{"content", res.content}, {"truncated", res.truncated}}},
               {"timestamp", iso_timestamp()}};
  std::lock_guard<std::mutex> lock(mu_);
  entries_[key] = {res.content, res.truncated};
  out_ << line.dump() << '\n';
  out_.flush();
}

size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

Gateway::Gateway(std::shared_ptr<ResponseCache> cache, std::shared_ptr<Backend> backend,
                 GatewayOptions options)
    : cache_(std::move(cache)), backend_(std::move(backend)), options_(std::move(options)),
      jitter_state_(options_.jitter_seed ^ 0x5bf03635ULL) {
  if (!options_.sleeper)
    options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!options_.audit_path.empty()) {
    if (options_.audit_path.has_parent_path())
      std::filesystem::create_directories(options_.audit_path.parent_path());
    audit_.open(options_.audit_path, std::ios::app);
    if (!audit_.good())
      throw std::runtime_error("cannot open audit log " + options_.audit_path.string());
  }
}

ChatResponse Gateway::dispatch(const ChatRequest& req) {
  ChatRequest attempt = req;
  bool widened = false;
  int failures = 0;
  for (;;) {
    ChatResponse res;
    try {
      res = backend_->complete(attempt);
    } catch (const GatewayError& e) {
      ++failures;
      if (!e.retryable() || failures >= options_.retry.attempts) throw;
      double scale;
      std::chrono::milliseconds delay;
      {
        std::lock_guard<std::mutex> lock(mu_);
        scale = 1.0 + options_.retry.jitter * (2.0 * next_unit(jitter_state_) - 1.0);
      }
      delay = std::chrono::milliseconds(static_cast<long>(
          static_cast<double>(options_.retry.base_delay.count()) * (1L << (failures - 1)) * scale));
      options_.sleeper(delay);
      continue;
    }
    if (res.truncated) {
      if (widened) throw TruncatedResponse();
      widened = true;
      attempt.max_tokens *= 2;
      continue;
    }
    return res;
  }
}

ChatResponse Gateway::complete(const ChatRequest& req, const CallTag& tag) {
  if (req.messages.empty()) throw GatewayError("request has no messages", false);
  std::string key = cache_key(req);

  ChatResponse res;
  bool cached = false;
  if (auto hit = cache_ ? cache_->lookup(key) : std::nullopt) {
    res = {hit->content, "cache", estimate_tokens(req, hit->content), hit->truncated};
    cached = true;
  } else if (options_.mode == GatewayMode::CacheOnly) {
    throw ReplayMiss(key);
  } else {
    res = dispatch(req);
    if (cache_) cache_->store(key, req, res);
    std::lock_guard<std::mutex> lock(mu_);
    ++backend_calls_;
  }

  if (audit_.is_open()) {
    size_t prompt_chars = 0;
    for (const auto& m : req.messages) prompt_chars += m.content.size();
    json line = {{"timestamp", iso_timestamp()},
                 {"key", key},
                 {"backend", res.backend_tag},
                 {"cached", cached},
                 {"role", tag.role},
                 {"episode", tag.episode},
                 {"seed", tag.seed},
                 {"model", req.model},
                 {"temperature", req.temperature},
                 {"prompt_chars", prompt_chars},
                 {"response_chars", res.content.size()}};
    std::lock_guard<std::mutex> lock(mu_);
    audit_ << line.dump() << '\n';
    audit_.flush();
  }
  return res;
}

long Gateway::backend_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return backend_calls_;
}

std::shared_ptr<Backend> backend_from_env(const Scenario& sc) {
  const char* selector = std::getenv("LMA3_BACKEND");
  std::string choice = selector ? selector : "oracle";
  if (choice == "oracle" || choice.empty()) return std::make_shared<OracleBackend>(sc);
  if (choice == "remote") {
    HttpConfig config;
    const char* base = std::getenv("LMA3_API_BASE");
    if (!base || !*base)
      throw std::invalid_argument("LMA3_BACKEND=remote requires LMA3_API_BASE");
    config.base_url = base;
    if (const char* key = std::getenv("LMA3_API_KEY")) config.api_key = key;
    return std::make_shared<HttpBackend>(std::move(config));
  }
  throw std::invalid_argument("unknown LMA3_BACKEND value: " + choice);
}

}  // namespace lma3
