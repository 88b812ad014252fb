#include "stylerl/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stylerl/rng.hpp"

namespace stylerl::env {

namespace {

constexpr std::array<std::string_view, 8> kTopics = {
    "the river mist rises over the old stone bridge",
    "a lone lamp burns late in the scholar's window",
    "spring rain loosens the petals along the path",
    "the ferryman waits where the reeds grow thick",
    "snow settles on the pines above the valley",
    "an old letter arrives long after its writer",
    "the market quiets as the evening bell sounds",
    "wild geese cross the cold autumn sky at dusk",
};

}  // namespace

std::vector<SourceSample> generate_sources(const StyleWorldConfig& config) {
  if (config.n_sources < 1) {
    throw std::invalid_argument("generate_sources: n_sources must be >= 1");
  }
  Rng rng = derive_stream(config.seed, "styleworld-sources");
  std::vector<SourceSample> out;
  out.reserve(static_cast<std::size_t>(config.n_sources));
  for (int i = 0; i < config.n_sources; ++i) {
    SourceSample s;
    char idbuf[16];
    std::snprintf(idbuf, sizeof(idbuf), "sw-%04d", i);
    s.id = idbuf;
    s.source_text = std::string("passage ") + std::to_string(i) + ": " +
                    std::string(kTopics[static_cast<std::size_t>(i) %
                                        kTopics.size()]) +
                    ".";
    s.src_lang = "English";
    s.trg_lang = "Chinese";
    const double jitter = rng.next_double(-3.0, 3.0);
    for (const StyleAction a : all_style_actions()) {
      s.features[quality_feature_key(a)] =
          config.true_quality_table[static_cast<std::size_t>(action_id(a))] +
          jitter;
    }
    out.push_back(std::move(s));
  }
  return out;
}

double true_quality(const SourceSample& source, StyleAction action) {
  const auto it = source.features.find(quality_feature_key(action));
  if (it == source.features.end()) {
    throw std::invalid_argument("source '" + source.id +
                                "' carries no true-quality features");
  }
  return it->second;
}

double judge_visible_score(const SourceSample& source, Style style,
                           double classical_bias) {
  double score = true_quality(source, StyleAction{style, Effort::high});
  if (style == Style::classical) score += classical_bias;
  return std::clamp(score, 0.0, 100.0);
}

std::vector<policy::BehaviorRecord> coldstart_behavior(
    const std::vector<SourceSample>& dataset, double free_fraction) {
  if (free_fraction < 0.0 || free_fraction > 1.0) {
    throw std::invalid_argument("coldstart_behavior: fraction out of [0,1]");
  }
  const std::size_t n = dataset.size();
  const std::size_t n_free =
      static_cast<std::size_t>(std::llround(free_fraction * static_cast<double>(n)));
  std::vector<policy::BehaviorRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Bresenham-style spreading: exactly n_free sources get the free label.
    const bool is_free = ((i + 1) * n_free) / n > (i * n_free) / n;
    policy::BehaviorRecord r;
    r.source_id = dataset[i].id;
    r.action = StyleAction{is_free ? Style::free : Style::literal, Effort::low};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace stylerl::env
