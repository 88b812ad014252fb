#include "stylerl/sample.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace stylerl {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DatasetError("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DatasetError("short write: " + path);
}

std::vector<SourceSample> parse_dataset_jsonl(std::string_view text) {
  std::vector<SourceSample> samples;
  std::unordered_set<std::string> seen_ids;
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
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         ": not a JSON object");
    }
    SourceSample s;
    s.id = j.value("id", std::string{});
    s.source_text = j.value("source_text", std::string{});
    s.src_lang = j.value("src_lang", std::string{});
    s.trg_lang = j.value("trg_lang", std::string{});
    if (j.contains("features")) {
      for (const auto& [k, v] : j.at("features").items()) {
        s.features[k] = v.get<double>();
      }
    }
    if (s.id.empty()) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         ": empty id");
    }
    if (!seen_ids.insert(s.id).second) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         ": duplicate id '" + s.id + "'");
    }
    if (s.source_text.empty()) {
      throw DatasetError("dataset line " + std::to_string(line_no) +
                         ": empty source_text for id '" + s.id + "'");
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::string to_dataset_jsonl(const std::vector<SourceSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    json j;
    j["id"] = s.id;
    j["source_text"] = s.source_text;
    j["src_lang"] = s.src_lang;
    j["trg_lang"] = s.trg_lang;
    if (!s.features.empty()) j["features"] = s.features;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<SourceSample> load_dataset_jsonl(const std::string& path) {
  return parse_dataset_jsonl(read_text_file(path));
}

void save_dataset_jsonl(const std::string& path,
                        const std::vector<SourceSample>& samples) {
  write_text_file(path, to_dataset_jsonl(samples));
}

}  // namespace stylerl
