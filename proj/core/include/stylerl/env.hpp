#pragma once

#include <array>
#include <string>
#include <vector>

#include "stylerl/policy.hpp"
#include "stylerl/sample.hpp"
#include "stylerl/scale.hpp"
#include "stylerl/style.hpp"

namespace stylerl::env {

// StyleWorld: a synthetic translation environment. Every generated source
// carries a per-action true-quality table (stored in its features) that a
// hidden oracle reads; the mock judge reads the same features but through a
// biased lens, over-rewarding classical style. The numbers are engineered so
// the biased judge score of (classical, high) lands 3 points under free
// style on the fine scale yet shares a band with it on the coarse 3-point
// scale.
struct StyleWorldConfig {
  // Indexed by action_id: (literal,low), (literal,high), (free,low),
  // (free,high), (classical,low), (classical,high).
  std::array<double, kNumStyleActions> true_quality_table = {55.0, 60.0, 70.0,
                                                             88.0, 72.0, 75.0};
  double classical_bias = 10.0;
  int n_sources = 200;
  std::uint64_t seed = 1;
};

// Deterministic synthetic sources. Each source draws one jitter value
// u in [-3, 3] and stores true_quality_table[a] + u under
// quality_feature_key(a) for every action. The jitter is shared across the
// six actions of one source so that every pairwise quality ordering from the
// table survives in every source; independent per-action jitter would let
// the 88-vs-85 judge-visible margin flip sign on some sources.
std::vector<SourceSample> generate_sources(const StyleWorldConfig& config);

// Hidden oracle: the jittered table entry for (source, action). Plays the
// role of an external quality metric the judge never sees directly. Raises
// std::invalid_argument when the source carries no quality features.
double true_quality(const SourceSample& source, StyleAction action);

// What the judge perceives for a translation in the given style: the true
// quality of the style at high effort, plus the classical bias, clamped to
// [0, 100]. Two deliberate distortions live here and only here:
//   - the classical bias, the judge's stylization preference;
//   - effort-blindness: the judge cannot see thinking effort through the
//     translation text, so both effort levels of a style read identically.
// The thought reward channel, not the translation score, is what
// distinguishes effort levels.
double judge_visible_score(const SourceSample& source, Style style,
                           double classical_bias);

// Mean true quality of a set of (source, action) rollout pairs; the
// training-dynamics counterpart of an external quality metric curve.
struct TrueQualityRecord {
  int step = 0;
  double mean_true_quality = 0.0;
};

// Cold-start behavior synthesis: mostly (literal, low) with a small share of
// (free, low), spread evenly over the dataset. One record per source.
std::vector<policy::BehaviorRecord> coldstart_behavior(
    const std::vector<SourceSample>& dataset, double free_fraction = 0.1);

}  // namespace stylerl::env
