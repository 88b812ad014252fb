#include "stylerl/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stylerl::rewards {

std::string_view variant_name(RewardVariant v) {
  switch (v) {
    case RewardVariant::standard:
      return "standard";
    case RewardVariant::length_penalty:
      return "length_penalty";
    case RewardVariant::no_thought:
      return "no_thought";
    case RewardVariant::no_thought_short_penalty:
      return "no_thought_short_penalty";
    case RewardVariant::scale3:
      return "scale3";
    case RewardVariant::scale5:
      return "scale5";
  }
  return "standard";
}

std::optional<RewardVariant> variant_from_name(std::string_view name) {
  for (const auto v :
       {RewardVariant::standard, RewardVariant::length_penalty,
        RewardVariant::no_thought, RewardVariant::no_thought_short_penalty,
        RewardVariant::scale3, RewardVariant::scale5}) {
    if (name == variant_name(v)) return v;
  }
  return std::nullopt;
}

RewardVariantConfig default_variant_config(RewardVariant v) {
  RewardVariantConfig cfg;
  cfg.variant = v;
  if (v == RewardVariant::scale3) {
    cfg.alpha = 0.6;
  } else if (v == RewardVariant::scale5) {
    cfg.alpha = 1.0;
  }
  return cfg;
}

ScaleKind variant_scale(RewardVariant v) {
  switch (v) {
    case RewardVariant::scale3:
      return ScaleKind::points3;
    case RewardVariant::scale5:
      return ScaleKind::points5;
    default:
      return ScaleKind::points100;
  }
}

int format_reward(const ParsedGeneration& parsed,
                  const judge::FormatJudgment& judgment) {
  return parsed.structure_ok && judgment.category == 1 ? 1 : 0;
}

int thought_reward(judge::ThoughtLabel label) {
  return static_cast<int>(label);
}

double length_penalty(int thought_tokens, const RewardVariantConfig& cfg) {
  if (cfg.lp_scale <= 0.0) {
    throw std::invalid_argument("length_penalty: lp_scale must be positive");
  }
  return std::max(-(thought_tokens - cfg.lp_offset) / cfg.lp_scale, 0.0);
}

double thought_reward_with_penalty(judge::ThoughtLabel label, int thought_tokens,
                                   const RewardVariantConfig& cfg) {
  return thought_reward(label) + length_penalty(thought_tokens, cfg);
}

double overall_no_thought(int fmt, double trans) {
  return fmt == 0 ? 0.0 : trans;
}

double overall_no_thought_short_penalty(int fmt, double trans,
                                        int thought_tokens,
                                        const RewardVariantConfig& cfg) {
  if (fmt == 0) return 0.0;
  if (thought_tokens < cfg.short_penalty_k) return 0.0;
  return trans;
}

int quantize_translation_score(double score, ScaleKind scale) {
  if (!(score >= 0.0 && score <= 100.0)) {
    throw std::invalid_argument("quantize_translation_score: score outside [0,100]");
  }
  switch (scale) {
    case ScaleKind::points100:
      return static_cast<int>(std::lround(score));
    case ScaleKind::points3:
      if (score < 100.0 / 3.0) return 0;
      if (score < 200.0 / 3.0) return 1;
      return 2;
    case ScaleKind::points5:
      return std::min(static_cast<int>(std::floor(score / 20.0)) + 1, 5);
  }
  return static_cast<int>(std::lround(score));
}

double overall_reward(int fmt, double trans, double thought,
                      const RewardVariantConfig& cfg, int thought_tokens) {
  if (fmt == 0) return 0.0;
  switch (cfg.variant) {
    case RewardVariant::standard:
    case RewardVariant::scale3:
    case RewardVariant::scale5:
      return trans + cfg.alpha * thought;
    case RewardVariant::length_penalty:
      return trans +
             cfg.alpha * (thought + length_penalty(thought_tokens, cfg));
    case RewardVariant::no_thought:
      return overall_no_thought(fmt, trans);
    case RewardVariant::no_thought_short_penalty:
      return overall_no_thought_short_penalty(fmt, trans, thought_tokens, cfg);
  }
  return 0.0;
}

RewardBreakdown compose_reward(const ParsedGeneration& parsed,
                               const judge::FormatJudgment& fmt,
                               const judge::ThoughtJudgment& thought,
                               const judge::TranslationJudgment& trans,
                               const RewardVariantConfig& cfg,
                               const TokenCounter& counter) {
  RewardBreakdown b;
  b.r_format = format_reward(parsed, fmt);
  b.r_thought = thought_reward(thought.label);
  b.r_trans = trans.score;
  b.thought_tokens = count_thought_tokens(parsed.thought, counter);
  b.r_all = overall_reward(b.r_format, b.r_trans, b.r_thought, cfg,
                           b.thought_tokens);
  b.variant_tag = cfg.variant;
  return b;
}

}  // namespace stylerl::rewards
