#include "stylerl/judge/remote.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "stylerl/judge/parsers.hpp"

namespace stylerl::judge {

using nlohmann::json;

namespace {

// Transport-level failure of one attempt; folded into the retry budget
// together with UnparseableJudgment.
struct TransportFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs one attempt, retrying on transport failures and unparseable replies.
// Backoff doubles per retry starting at backoff_initial_ms.
template <typename Attempt>
auto with_retries(const JudgeEndpointConfig& cfg, Attempt&& attempt)
    -> decltype(attempt()) {
  std::string last_error = "no attempt made";
  for (int k = 0; k <= cfg.max_retries; ++k) {
    if (k > 0 && cfg.backoff_initial_ms > 0) {
      const auto delay = std::chrono::milliseconds(
          static_cast<std::int64_t>(cfg.backoff_initial_ms) << (k - 1));
      std::this_thread::sleep_for(delay);
    }
    try {
      return attempt();
    } catch (const UnparseableJudgment& e) {
      last_error = std::string("unparseable reply: ") + e.what();
    } catch (const TransportFailure& e) {
      last_error = e.what();
    }
  }
  throw JudgeUnavailable("judge endpoint failed after " +
                         std::to_string(cfg.max_retries + 1) +
                         " attempts; last error: " + last_error);
}

}  // namespace

RemoteJudge::RemoteJudge(JudgeEndpointConfig config)
    : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw std::invalid_argument("judge endpoint: base_url is empty");
  }
  if (config_.max_retries < 0) {
    throw std::invalid_argument("judge endpoint: max_retries must be >= 0");
  }
  if (config_.max_in_flight < 1) {
    throw std::invalid_argument("judge endpoint: max_in_flight must be >= 1");
  }
  if (config_.request_timeout_ms <= 0) {
    throw std::invalid_argument(
        "judge endpoint: request_timeout_ms must be positive");
  }
  if (config_.backoff_initial_ms < 0) {
    throw std::invalid_argument(
        "judge endpoint: backoff_initial_ms must be >= 0");
  }
  if (config_.api_key.empty()) {
    if (const char* env_key = std::getenv("STYLERL_API_KEY")) {
      config_.api_key = env_key;
    }
  }
  if (config_.grf_template.empty()) {
    config_.grf_template = std::string(default_grf_template());
  }

  // Split base_url into the connection origin and an optional path prefix,
  // so "http://host:1234/v1" posts to "/v1/chat/completions".
  const auto scheme_end = config_.base_url.find("://");
  const auto path_start = config_.base_url.find(
      '/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    origin_ = config_.base_url;
  } else {
    origin_ = config_.base_url.substr(0, path_start);
    path_prefix_ = config_.base_url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') {
      path_prefix_.pop_back();
    }
  }
}

std::string RemoteJudge::post_chat(const PromptMessages& messages) const {
  json body;
  body["model"] = config_.model_name;
  json msgs = json::array();
  if (!messages.system.empty()) {
    msgs.push_back({{"role", "system"}, {"content", messages.system}});
  }
  msgs.push_back({{"role", "user"}, {"content", messages.user}});
  body["messages"] = std::move(msgs);
  body["temperature"] = 0;

  httplib::Client client(origin_);
  client.set_connection_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
  client.set_read_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
  client.set_write_timeout(std::chrono::milliseconds(config_.request_timeout_ms));
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  const auto res = client.Post(path_prefix_ + "/chat/completions", headers,
                               body.dump(), "application/json");
  if (!res) {
    throw TransportFailure("transport error: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportFailure("endpoint returned status " +
                           std::to_string(res->status));
  }
  const json reply = json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") ||
      !reply["choices"].is_array() || reply["choices"].empty() ||
      !reply["choices"][0].contains("message") ||
      !reply["choices"][0]["message"].contains("content") ||
      !reply["choices"][0]["message"]["content"].is_string()) {
    throw TransportFailure("endpoint reply is not a chat completion");
  }
  return reply["choices"][0]["message"]["content"].get<std::string>();
}

FormatJudgment RemoteJudge::judge_format(const SourceSample& sample,
                                         const ParsedGeneration& parsed) {
  return with_retries(config_, [&] {
    PromptMessages messages;
    messages.user = render_format_prompt(sample, parsed.translation);
    return parse_format_judgment(post_chat(messages));
  });
}

ThoughtJudgment RemoteJudge::judge_thought(const SourceSample& sample,
                                           const ParsedGeneration& parsed) {
  return with_retries(config_, [&] {
    PromptMessages messages;
    messages.user = render_thought_prompt(sample, parsed.thought);
    return parse_thought_judgment(post_chat(messages));
  });
}

TranslationJudgment RemoteJudge::judge_translation(
    const SourceSample& sample, const ParsedGeneration& parsed) {
  return with_retries(config_, [&] {
    const PromptMessages messages = render_translation_prompts(
        sample, parsed.translation, config_.scale);
    return parse_translation_judgment(post_chat(messages));
  });
}

int RemoteJudge::score_grf(const SourceSample& sample,
                           std::string_view translation) {
  return with_retries(config_, [&] {
    PromptMessages messages;
    messages.user = render_template(config_.grf_template, sample, translation);
    return parse_grf_score(post_chat(messages));
  });
}

std::vector<GenerationJudgments> RemoteJudge::score_batch(
    const std::vector<JudgeRequest>& requests) {
  std::vector<GenerationJudgments> out(requests.size());
  if (requests.empty()) return out;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      const JudgeRequest& req = requests[i];
      if (req.sample == nullptr || req.parsed == nullptr) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::make_exception_ptr(
              std::invalid_argument("score_batch: null request"));
        }
        return;
      }
      try {
        out[i].format = judge_format(*req.sample, *req.parsed);
        out[i].thought = judge_thought(*req.sample, *req.parsed);
        out[i].translation = judge_translation(*req.sample, *req.parsed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  // Each worker keeps at most one request open at a time, so the worker
  // count is the in-flight bound.
  const std::size_t n_workers = std::min<std::size_t>(
      static_cast<std::size_t>(config_.max_in_flight), requests.size());
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace stylerl::judge
