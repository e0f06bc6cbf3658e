#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rts/corpus.hpp"
#include "rts/error.hpp"
#include "rts/ranking.hpp"
#include "rts/scoring.hpp"

namespace rts {

// --- templates ----------------------------------------------------------------

enum class TemplateRole { ranker, scorer };
TemplateRole parse_template_role(const std::string& s);
std::string to_string(TemplateRole r);

struct Message {
  std::string role;  // "system" or "user"
  std::string content;
};

using Bindings = std::map<std::string, std::string>;

/// Instruction text with {slot} placeholders. Slot names are lowercase
/// identifiers; other braces pass through untouched.
struct PromptTemplate {
  TemplateRole role = TemplateRole::ranker;
  Language language = Language::en;
  std::string system;
  std::string user;

  /// File layout: system text, a line holding only `---`, user text.
  /// Without the separator line the whole file is the user message.
  static PromptTemplate parse(TemplateRole role, Language language, const std::string& text);
  static PromptTemplate load(const std::filesystem::path& path, TemplateRole role, Language language);
  static PromptTemplate builtin(TemplateRole role, Language language);

  /// Inverse of parse().
  std::string serialize() const;
  /// Distinct slot names in order of first appearance.
  std::vector<std::string> slots() const;
  /// Throws ConfigError unless every slot the role needs is referenced.
  void validate() const;
};

/// ranker: essay_1, essay_2. scorer: essay, candidate_scores, score_min, score_max.
const std::vector<std::string>& required_slots(TemplateRole role);

/// System message (when present) then user message. Throws ConfigError
/// naming the first unbound slot.
std::vector<Message> render(const PromptTemplate& templ, const Bindings& bindings);

// --- endpoint -----------------------------------------------------------------

struct RetryPolicy {
  int max_attempts = 3;
  double backoff_seconds = 1.0;
  double backoff_multiplier = 2.0;
};

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env;  // empty -> no Authorization header
  double temperature = 0.0;
  int max_tokens = 16;
  double timeout_seconds = 60.0;
  RetryPolicy retry;
  int max_in_flight = 4;

  void validate() const;
  static EndpointConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Network failure, malformed reply, or exhausted retries.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what, bool transient = true) : Error(what), transient_(transient) {}
  bool transient() const noexcept { return transient_; }

 private:
  bool transient_;
};

enum class HttpErrorKind { auth, rate_limit, server, client };
std::string to_string(HttpErrorKind k);
HttpErrorKind classify_status(int status);

class HttpStatusError : public TransportError {
 public:
  HttpStatusError(int status, const std::string& body);
  int status() const noexcept { return status_; }
  HttpErrorKind kind() const noexcept { return kind_; }

 private:
  int status_;
  HttpErrorKind kind_;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// Throws TransportError on connection failure; any HTTP status is returned.
  virtual HttpResponse post(const EndpointConfig& cfg, const std::string& body,
                            const std::map<std::string, std::string>& headers) = 0;
};

/// Plain HTTP (HTTPS when built with OpenSSL).
class HttpTransport final : public Transport {
 public:
  HttpResponse post(const EndpointConfig& cfg, const std::string& body,
                    const std::map<std::string, std::string>& headers) override;
};

/// Deterministic in-process endpoint. The handler maps the request's
/// messages to reply text; queued failures are served first.
class StubTransport final : public Transport {
 public:
  using Handler = std::function<std::string(const std::vector<Message>&)>;

  explicit StubTransport(Handler handler, std::chrono::microseconds latency = {});

  HttpResponse post(const EndpointConfig& cfg, const std::string& body,
                    const std::map<std::string, std::string>& headers) override;

  /// The next `n` requests fail: status 0 is a connection error, otherwise that HTTP status.
  void fail_next(std::size_t n, int status = 0);

  std::size_t requests() const;
  std::size_t max_in_flight_observed() const;
  std::vector<std::string> request_bodies() const;

 private:
  Handler handler_;
  std::chrono::microseconds latency_;
  mutable std::mutex mu_;
  std::deque<int> failures_;
  std::size_t requests_ = 0;
  std::size_t in_flight_ = 0;
  std::size_t max_in_flight_ = 0;
  std::vector<std::string> bodies_;
};

/// Canned replies derived from a hash of the rendered messages: "Essay 1" or
/// "Essay 2" for a ranker, "Score: n" with n in [lo, hi] for a scorer.
StubTransport::Handler hash_rank_handler();
StubTransport::Handler hash_score_handler(int lo, int hi);

/// Chat-completion client with retries and a bound on concurrent requests.
class ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::duration<double>)>;

  ChatClient(EndpointConfig cfg, std::shared_ptr<Transport> transport, Sleeper sleeper = {});

  /// Retries connection errors, 429 and 5xx with exponential backoff. Auth and
  /// other 4xx fail at once with HttpStatusError.
  std::string complete(const std::vector<Message>& messages);

  const EndpointConfig& config() const noexcept { return cfg_; }
  std::size_t attempts() const;

 private:
  std::string request_body(const std::vector<Message>& messages) const;

  EndpointConfig cfg_;
  std::shared_ptr<Transport> transport_;
  Sleeper sleeper_;
  std::map<std::string, std::string> headers_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::size_t attempts_ = 0;
};

// --- parsing ------------------------------------------------------------------

struct RankParse {
  std::optional<int> index;  // 1 or 2
  std::string raw;
};

/// First standalone 1 or 2 (ASCII or full-width digit).
RankParse parse_rank(std::string_view raw);

struct ScoreParse {
  std::optional<int> value;  // first integer as written
  std::optional<int> score;  // value clamped to the lattice
  bool clamped = false;
  std::string raw;
};

ScoreParse parse_score(std::string_view raw, const PromptSpec& prompt);

// --- model-backed judges ------------------------------------------------------

class LlmComparator final : public Comparator {
 public:
  LlmComparator(std::shared_ptr<ChatClient> client, PromptTemplate templ, PromptSpec prompt);
  std::optional<bool> compare(std::string_view first, std::string_view second) override;
  std::unique_ptr<Comparator> fork(std::uint64_t stream) const override;
  std::string name() const override;

 private:
  std::shared_ptr<ChatClient> client_;
  PromptTemplate templ_;
  PromptSpec prompt_;
};

/// Returns the parsed integer unclamped; the engine clamps and counts
/// violations. No integer -> midpoint of the set with parse_failure set.
class LlmScorer final : public Scorer {
 public:
  LlmScorer(std::shared_ptr<ChatClient> client, PromptTemplate templ);
  ScoreOutcome score(const std::string& essay_text, const std::vector<int>& candidates,
                     const PromptSpec& prompt) override;
  std::unique_ptr<Scorer> fork(std::uint64_t stream) const override;
  std::string name() const override;

 private:
  std::shared_ptr<ChatClient> client_;
  PromptTemplate templ_;
};

}  // namespace rts
