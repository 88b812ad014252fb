#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stylerl {

// One translation source. `features` is populated for synthetic sources only,
// where it carries per-action quality values (see quality_feature_key) that
// the mock judge and the true-quality oracle read.
struct SourceSample {
  std::string id;
  std::string source_text;
  std::string src_lang;
  std::string trg_lang;
  std::map<std::string, double> features;

  friend bool operator==(const SourceSample&, const SourceSample&) = default;
};

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSONL, one object per line: {"id", "source_text", "src_lang", "trg_lang",
// "features"?}. Loading validates that ids are non-empty and unique and that
// source_text is non-empty; violations raise DatasetError.
std::vector<SourceSample> parse_dataset_jsonl(std::string_view text);
std::string to_dataset_jsonl(const std::vector<SourceSample>& samples);
std::vector<SourceSample> load_dataset_jsonl(const std::string& path);
void save_dataset_jsonl(const std::string& path,
                        const std::vector<SourceSample>& samples);

// Shared by every loader in the project: reads a whole file or raises
// DatasetError with the path in the message.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace stylerl
