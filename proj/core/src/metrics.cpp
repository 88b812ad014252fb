#include "stylerl/metrics.hpp"

#include <json.hpp>

#include "stylerl/sample.hpp"

namespace stylerl::train {

using nlohmann::json;

std::string to_metrics_jsonl(const std::vector<MetricRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["step"] = r.step;
    j["mean_reward"] = r.mean_reward;
    j["mean_thought_length_tokens"] = r.mean_thought_length_tokens;
    j["mean_translation_reward"] = r.mean_translation_reward;
    j["style_histogram"] = r.style_histogram;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<MetricRecord> parse_metrics_jsonl(std::string_view text) {
  std::vector<MetricRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.empty()) continue;

    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DatasetError("metrics line " + std::to_string(line_no) +
                         ": not a JSON object");
    }
    MetricRecord r;
    r.step = j.value("step", 0);
    r.mean_reward = j.value("mean_reward", 0.0);
    r.mean_thought_length_tokens = j.value("mean_thought_length_tokens", 0.0);
    r.mean_translation_reward = j.value("mean_translation_reward", 0.0);
    if (j.contains("style_histogram")) {
      for (const auto& [k, v] : j.at("style_histogram").items()) {
        r.style_histogram[k] = v.get<double>();
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

void save_metrics_jsonl(const std::string& path,
                        const std::vector<MetricRecord>& records) {
  write_text_file(path, to_metrics_jsonl(records));
}

std::vector<MetricRecord> load_metrics_jsonl(const std::string& path) {
  return parse_metrics_jsonl(read_text_file(path));
}

}  // namespace stylerl::train
