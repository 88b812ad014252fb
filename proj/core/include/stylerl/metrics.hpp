#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace stylerl::train {

// One training step's instrumentation. style_histogram maps style name to
// the fraction of this step's rollouts rendered in that style; it is filled
// for synthetic sources and sums to 1 when present.
//
// wall_time_ms is measurement-only state: it never enters the serialized
// form, because metric files for identical (seed, config, mock judge) runs
// must be byte-identical, and wall time is the one field that cannot be.
struct MetricRecord {
  int step = 0;
  double mean_reward = 0.0;
  double mean_thought_length_tokens = 0.0;
  double mean_translation_reward = 0.0;
  std::map<std::string, double> style_histogram;
  std::int64_t wall_time_ms = 0;
};

// JSONL, one record per line with keys step, mean_reward,
// mean_thought_length_tokens, mean_translation_reward, style_histogram.
std::string to_metrics_jsonl(const std::vector<MetricRecord>& records);
std::vector<MetricRecord> parse_metrics_jsonl(std::string_view text);
void save_metrics_jsonl(const std::string& path,
                        const std::vector<MetricRecord>& records);
std::vector<MetricRecord> load_metrics_jsonl(const std::string& path);

}  // namespace stylerl::train
