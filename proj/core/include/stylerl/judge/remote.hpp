#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylerl/judge/judge.hpp"
#include "stylerl/judge/prompts.hpp"
#include "stylerl/scale.hpp"

namespace stylerl::judge {

// Connection settings for an OpenAI-compatible chat endpoint. An empty
// api_key falls back to the STYLERL_API_KEY environment variable at
// construction time. grf_template is the general-rating prompt slot; the
// shipped default is a placeholder, see default_grf_template().
struct JudgeEndpointConfig {
  std::string base_url;  // scheme://host[:port][/path-prefix]
  std::string model_name;
  std::string api_key;
  int max_retries = 3;
  int backoff_initial_ms = 250;
  int max_in_flight = 8;
  int request_timeout_ms = 30000;
  ScaleKind scale = ScaleKind::points100;
  std::string grf_template;  // empty = default_grf_template()
};

// Chat-completion client that renders the judging prompts, posts them at
// temperature 0, and parses the replies. A transport failure or an
// unparseable reply triggers a retry with exponential backoff; once the
// retry budget is spent the call raises JudgeUnavailable, so a caller can
// pause rather than fabricate a reward. Instances are shareable across
// threads; score_batch fans out over worker threads and never holds more
// than max_in_flight connections open.
class RemoteJudge final : public Judge {
 public:
  explicit RemoteJudge(JudgeEndpointConfig config);

  FormatJudgment judge_format(const SourceSample& sample,
                              const ParsedGeneration& parsed) override;
  ThoughtJudgment judge_thought(const SourceSample& sample,
                                const ParsedGeneration& parsed) override;
  TranslationJudgment judge_translation(const SourceSample& sample,
                                        const ParsedGeneration& parsed) override;
  std::vector<GenerationJudgments> score_batch(
      const std::vector<JudgeRequest>& requests) override;

  // General-rating score in [0,100] via the configured grf_template.
  int score_grf(const SourceSample& sample, std::string_view translation);

  const JudgeEndpointConfig& config() const { return config_; }

 private:
  std::string post_chat(const PromptMessages& messages) const;

  JudgeEndpointConfig config_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // leading path carried by base_url, may be empty
};

}  // namespace stylerl::judge
