#include "stylerl/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stylerl/rng.hpp"

namespace stylerl::eval {

using nlohmann::json;

std::string_view aspect_name(Aspect a) {
  switch (a) {
    case Aspect::fluency:
      return "fluency";
    case Aspect::semantic_accuracy:
      return "semantic_accuracy";
    case Aspect::literary_quality:
      return "literary_quality";
  }
  return "fluency";
}

std::optional<Aspect> aspect_from_name(std::string_view name) {
  if (name == "fluency") return Aspect::fluency;
  if (name == "semantic_accuracy") return Aspect::semantic_accuracy;
  if (name == "literary_quality") return Aspect::literary_quality;
  return std::nullopt;
}

std::vector<SourceSample> sample_subset(const std::vector<SourceSample>& dataset,
                                        std::size_t size, std::uint64_t seed) {
  if (size > dataset.size()) {
    throw SubsetTooLarge("cannot sample " + std::to_string(size) +
                         " items from a dataset of " +
                         std::to_string(dataset.size()));
  }
  Rng rng = derive_stream(seed, "subset");
  std::vector<SourceSample> out;
  out.reserve(size);
  std::size_t needed = size;
  std::size_t remaining = dataset.size();
  // Selection sampling: take each element with probability needed/remaining,
  // which yields every size-subset with equal probability and keeps dataset
  // order.
  for (const auto& s : dataset) {
    if (needed == 0) break;
    if (rng.next_double() * static_cast<double>(remaining) <
        static_cast<double>(needed)) {
      out.push_back(s);
      --needed;
    }
    --remaining;
  }
  return out;
}

double gea_aggregate(std::span<const double> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("gea_aggregate: no scores");
  }
  const double total = std::accumulate(scores.begin(), scores.end(), 0.0);
  return total / static_cast<double>(scores.size());
}

double best_worst_score(const std::vector<BestWorstBallot>& ballots,
                        std::string_view system, Aspect aspect) {
  long long total = 0;
  long long net = 0;
  for (const auto& b : ballots) {
    if (b.aspect != aspect) continue;
    ++total;
    if (b.best_system == system) ++net;
    if (b.worst_system == system) --net;
  }
  if (total == 0) {
    throw NoBallots("no ballots for aspect " + std::string(aspect_name(aspect)));
  }
  return static_cast<double>(net) / static_cast<double>(total);
}

double fleiss_kappa(const std::vector<std::vector<int>>& ratings) {
  if (ratings.empty() || ratings[0].empty()) {
    throw std::invalid_argument("fleiss_kappa: empty rating matrix");
  }
  const std::size_t k = ratings[0].size();
  long long n = 0;
  for (int v : ratings[0]) n += v;
  long long sum_sq = 0;
  std::vector<long long> col(k, 0);
  for (const auto& row : ratings) {
    if (row.size() != k) {
      throw RaggedMatrix("fleiss_kappa: rows disagree on category count");
    }
    long long row_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] < 0) {
        throw std::invalid_argument("fleiss_kappa: negative count");
      }
      row_sum += row[j];
      col[j] += row[j];
      sum_sq += static_cast<long long>(row[j]) * row[j];
    }
    if (row_sum != n) {
      throw RaggedMatrix("fleiss_kappa: items rated by differing rater counts");
    }
  }
  if (n < 2) {
    throw std::invalid_argument("fleiss_kappa: need at least 2 raters per item");
  }
  const long long m = static_cast<long long>(ratings.size());

  // kappa = (Pbar - Pe) / (1 - Pe) evaluated as one exact integer ratio:
  //   Pbar = A/B with A = sum n_ij^2 - m n, B = m n (n-1)
  //   Pe   = C/D with C = sum_j c_j^2,      D = (m n)^2
  const long long A = sum_sq - m * n;
  const long long B = m * n * (n - 1);
  long long C = 0;
  for (long long c : col) C += c * c;
  const long long D = (m * n) * (m * n);
  const __int128 num = static_cast<__int128>(A) * D - static_cast<__int128>(B) * C;
  const __int128 den = static_cast<__int128>(B) * (D - C);
  if (den == 0) {
    throw DegenerateAgreement(
        "fleiss_kappa: every rating fell in one category");
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<TranslationEntry> parse_eval_jsonl(std::string_view text) {
  std::vector<TranslationEntry> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DatasetError("eval line " + std::to_string(line_no) +
                         ": not a JSON object");
    }
    for (const char* key : {"sample_id", "system", "translation"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        throw DatasetError("eval line " + std::to_string(line_no) +
                           ": missing string field \"" + key + "\"");
      }
    }
    TranslationEntry e;
    e.sample_id = j["sample_id"].get<std::string>();
    e.system = j["system"].get<std::string>();
    e.translation = j["translation"].get<std::string>();
    if (e.sample_id.empty()) {
      throw DatasetError("eval line " + std::to_string(line_no) +
                         ": empty sample_id");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string to_eval_jsonl(const std::vector<TranslationEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    json j;
    j["sample_id"] = e.sample_id;
    j["system"] = e.system;
    j["translation"] = e.translation;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TranslationEntry> load_eval_jsonl(const std::string& path) {
  return parse_eval_jsonl(read_text_file(path));
}

void save_eval_jsonl(const std::string& path,
                     const std::vector<TranslationEntry>& entries) {
  write_text_file(path, to_eval_jsonl(entries));
}

namespace {

constexpr std::string_view kBallotHeader =
    "item_id,aspect,rater_id,best_system,worst_system";

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(pos));
      return fields;
    }
    fields.emplace_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

}  // namespace

std::vector<BestWorstBallot> parse_ballots_csv(std::string_view text) {
  std::vector<BestWorstBallot> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kBallotHeader) {
        throw DatasetError("ballots line 1: expected header \"" +
                           std::string(kBallotHeader) + "\"");
      }
      saw_header = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw DatasetError("ballots line " + std::to_string(line_no) +
                         ": expected 5 comma-separated fields");
    }
    BestWorstBallot b;
    b.item_id = fields[0];
    const auto aspect = aspect_from_name(fields[1]);
    if (!aspect) {
      throw DatasetError("ballots line " + std::to_string(line_no) +
                         ": unknown aspect \"" + fields[1] + "\"");
    }
    b.aspect = *aspect;
    b.rater_id = fields[2];
    b.best_system = fields[3];
    b.worst_system = fields[4];
    if (b.item_id.empty() || b.rater_id.empty() || b.best_system.empty() ||
        b.worst_system.empty()) {
      throw DatasetError("ballots line " + std::to_string(line_no) +
                         ": empty field");
    }
    if (b.best_system == b.worst_system) {
      throw DatasetError("ballots line " + std::to_string(line_no) +
                         ": best and worst name the same system");
    }
    out.push_back(std::move(b));
  }
  if (!saw_header) {
    throw DatasetError("ballots line 1: expected header \"" +
                       std::string(kBallotHeader) + "\"");
  }
  return out;
}

std::string to_ballots_csv(const std::vector<BestWorstBallot>& ballots) {
  std::string out(kBallotHeader);
  out += '\n';
  for (const auto& b : ballots) {
    out += b.item_id;
    out += ',';
    out += aspect_name(b.aspect);
    out += ',';
    out += b.rater_id;
    out += ',';
    out += b.best_system;
    out += ',';
    out += b.worst_system;
    out += '\n';
  }
  return out;
}

std::vector<BestWorstBallot> load_ballots_csv(const std::string& path) {
  return parse_ballots_csv(read_text_file(path));
}

EvalRun score_translations(const std::vector<TranslationEntry>& entries,
                           const std::vector<SourceSample>& dataset,
                           judge::Judge& judge, std::string_view system,
                           std::string_view dataset_id,
                           std::string_view metric_name) {
  std::map<std::string_view, const SourceSample*> by_id;
  for (const auto& s : dataset) by_id.emplace(s.id, &s);

  EvalRun run;
  run.system_name = std::string(system);
  run.dataset_id = std::string(dataset_id);
  for (const auto& e : entries) {
    if (e.system != system) continue;
    const auto it = by_id.find(e.sample_id);
    if (it == by_id.end()) {
      throw DatasetError("eval entry names unknown sample id \"" +
                         e.sample_id + "\"");
    }
    ParsedGeneration parsed;
    parsed.translation = e.translation;
    parsed.structure_ok = true;
    const auto verdict = judge.judge_translation(*it->second, parsed);
    run.per_sample_scores.push_back(ScoreEntry{
        e.sample_id, std::string(metric_name),
        static_cast<double>(verdict.score)});
  }
  return run;
}

namespace {

struct ReportRow {
  std::string section;
  std::string system;
  std::string dataset;
  std::string metric;
  double value = 0.0;
  std::size_t count = 0;

  friend bool operator<(const ReportRow& a, const ReportRow& b) {
    return std::tie(a.section, a.system, a.dataset, a.metric) <
           std::tie(b.section, b.system, b.dataset, b.metric);
  }
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

EvalReport build_report(const std::vector<EvalRun>& runs,
                        const std::vector<BestWorstBallot>& ballots) {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;

  for (const auto& run : runs) {
    std::map<std::string, std::vector<double>> by_metric;
    for (const auto& s : run.per_sample_scores) {
      by_metric[s.metric].push_back(s.value);
    }
    for (const auto& [metric, values] : by_metric) {
      rows.push_back(ReportRow{"metrics", run.system_name, run.dataset_id,
                               metric, gea_aggregate(values), values.size()});
    }
  }

  for (const Aspect aspect : {Aspect::fluency, Aspect::semantic_accuracy,
                              Aspect::literary_quality}) {
    std::set<std::string> systems;
    std::size_t n_ballots = 0;
    for (const auto& b : ballots) {
      if (b.aspect != aspect) continue;
      ++n_ballots;
      systems.insert(b.best_system);
      systems.insert(b.worst_system);
    }
    if (n_ballots == 0) continue;
    for (const auto& system : systems) {
      rows.push_back(ReportRow{"best_worst", system, "-",
                               std::string(aspect_name(aspect)),
                               best_worst_score(ballots, system, aspect),
                               n_ballots});
    }

    // Rater agreement on the best pick: items x systems count matrix.
    std::map<std::string, std::map<std::string, int>> votes;
    for (const auto& b : ballots) {
      if (b.aspect == aspect) ++votes[b.item_id][b.best_system];
    }
    std::vector<std::vector<int>> matrix;
    matrix.reserve(votes.size());
    for (const auto& [item, by_system] : votes) {
      std::vector<int> row;
      row.reserve(systems.size());
      for (const auto& system : systems) {
        const auto it = by_system.find(system);
        row.push_back(it == by_system.end() ? 0 : it->second);
      }
      matrix.push_back(std::move(row));
    }
    try {
      rows.push_back(ReportRow{"kappa", "-", "-",
                               std::string(aspect_name(aspect)),
                               fleiss_kappa(matrix), matrix.size()});
    } catch (const RaggedMatrix& e) {
      notes.push_back("kappa skipped for " +
                      std::string(aspect_name(aspect)) + ": " + e.what());
    } catch (const DegenerateAgreement& e) {
      notes.push_back("kappa skipped for " +
                      std::string(aspect_name(aspect)) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      notes.push_back("kappa skipped for " +
                      std::string(aspect_name(aspect)) + ": " + e.what());
    }
  }

  std::sort(rows.begin(), rows.end());

  EvalReport report;
  report.csv = "section,system,dataset,metric,value,count\n";
  for (const auto& r : rows) {
    report.csv += r.section + "," + r.system + "," + r.dataset + "," +
                  r.metric + "," + format_value(r.value) + "," +
                  std::to_string(r.count) + "\n";
  }

  std::ostringstream text;
  text << "evaluation report (" << rows.size() << " rows)\n";
  std::string_view section;
  for (const auto& r : rows) {
    if (r.section != section) {
      section = r.section;
      text << "[" << section << "]\n";
    }
    text << "  " << r.system << " / " << r.dataset << " / " << r.metric
         << " = " << format_value(r.value) << " (n=" << r.count << ")\n";
  }
  for (const auto& note : notes) text << "note: " << note << "\n";
  report.summary = text.str();
  return report;
}

}  // namespace stylerl::eval
