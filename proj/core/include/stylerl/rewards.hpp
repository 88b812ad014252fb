#pragma once

#include <optional>
#include <string_view>

#include "stylerl/judge/types.hpp"
#include "stylerl/scale.hpp"
#include "stylerl/text.hpp"

namespace stylerl::rewards {

// Reward composition variants. `standard` is the shipped design; the others
// are the ablation arms:
//   length_penalty           thought reward gains a penalty for thoughts
//                            shorter than lp_offset tokens
//   no_thought               overall reward drops the thought term entirely
//   no_thought_short_penalty additionally zeroes the reward when the thought
//                            is shorter than short_penalty_k tokens
//   scale3 / scale5          translation scores arrive on a coarser rubric;
//                            alpha is remapped to keep the thought share of
//                            the maximum reward comparable
enum class RewardVariant {
  standard,
  length_penalty,
  no_thought,
  no_thought_short_penalty,
  scale3,
  scale5,
};

std::string_view variant_name(RewardVariant v);
std::optional<RewardVariant> variant_from_name(std::string_view name);

struct RewardVariantConfig {
  RewardVariant variant = RewardVariant::standard;
  double alpha = 20.0;       // weight of the thought term in the overall reward
  double lp_offset = 400.0;  // token count below which the length penalty bites
  double lp_scale = 400.0;   // divisor shaping the penalty slope
  int short_penalty_k = 10;  // minimum thought tokens under the short gate
};

// Per-variant defaults; alpha is 20 except scale3 -> 0.6 and scale5 -> 1.0.
RewardVariantConfig default_variant_config(RewardVariant v);

// Which rubric the judge scores translations on under this variant.
ScaleKind variant_scale(RewardVariant v);

// 1 iff the tag structure parsed AND the judge saw a translation-only output
// (category 1); 0 otherwise.
int format_reward(const ParsedGeneration& parsed,
                  const judge::FormatJudgment& judgment);

// detailed -> 2, slight -> 1, lack -> 0.
int thought_reward(judge::ThoughtLabel label);

// max(-(tokens - lp_offset) / lp_scale, 0): zero at or beyond lp_offset
// tokens, growing linearly as the thought shrinks below it.
double length_penalty(int thought_tokens, const RewardVariantConfig& cfg);

// thought_reward(label) + length_penalty(tokens). The "penalty" is a positive
// bonus for short thoughts by construction; that is the printed definition,
// and the ablation exists to show it backfires.
double thought_reward_with_penalty(judge::ThoughtLabel label, int thought_tokens,
                                   const RewardVariantConfig& cfg);

// Format-gated translation reward with no thought term.
double overall_no_thought(int fmt, double trans);

// As overall_no_thought, but hard-zero when the thought runs under
// short_penalty_k tokens (strict comparison: exactly k tokens passes).
double overall_no_thought_short_penalty(int fmt, double trans, int thought_tokens,
                                        const RewardVariantConfig& cfg);

// Collapses a 0-100 score onto a coarser scale. points3 uses three equal-width
// bands mapped to {0,1,2}; points5 uses width-20 bands mapped to {1..5} with
// 100 in the top band. Monotone non-decreasing in the score. Scores outside
// [0,100] are rejected.
int quantize_translation_score(double score, ScaleKind scale);

// Overall reward with variant dispatch. Always 0 when fmt == 0. `thought` is
// the numeric thought reward; `thought_tokens` feeds the variants whose
// formula needs the token count and is ignored by the others.
double overall_reward(int fmt, double trans, double thought,
                      const RewardVariantConfig& cfg, int thought_tokens = 0);

// One scored generation, all reward channels plus the composed total.
struct RewardBreakdown {
  int r_format = 0;
  int r_thought = 0;       // raw label reward in {0,1,2}, pre-penalty
  double r_trans = 0.0;    // translation score on the active scale
  double r_all = 0.0;
  int thought_tokens = 0;
  RewardVariant variant_tag = RewardVariant::standard;
};

RewardBreakdown compose_reward(const ParsedGeneration& parsed,
                               const judge::FormatJudgment& fmt,
                               const judge::ThoughtJudgment& thought,
                               const judge::TranslationJudgment& trans,
                               const RewardVariantConfig& cfg,
                               const TokenCounter& counter = nullptr);

}  // namespace stylerl::rewards
