#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stylerl/judge/judge.hpp"
#include "stylerl/sample.hpp"

namespace stylerl::eval {

struct SubsetTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoBallots : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RaggedMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// All ratings fell into one category, so chance agreement is 1 and kappa's
// denominator vanishes.
struct DegenerateAgreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Aspect { fluency, semantic_accuracy, literary_quality };

std::string_view aspect_name(Aspect a);
std::optional<Aspect> aspect_from_name(std::string_view name);

// One rater's best/worst pick for one item under one aspect.
struct BestWorstBallot {
  std::string item_id;
  Aspect aspect = Aspect::fluency;
  std::string rater_id;
  std::string best_system;
  std::string worst_system;

  friend bool operator==(const BestWorstBallot&,
                         const BestWorstBallot&) = default;
};

struct ScoreEntry {
  std::string sample_id;
  std::string metric;
  double value = 0.0;
};

// Scores one system produced on one dataset. Metric names are free-form;
// "GEA100", "GEA5", and "GRF" label the judge-backed protocols, anything
// else is an externally computed column ingested as opaque floats.
struct EvalRun {
  std::string system_name;
  std::string dataset_id;
  std::vector<ScoreEntry> per_sample_scores;
  std::uint64_t subset_seed = 0;
};

// One system's translation of one sample, as read from eval input JSONL.
struct TranslationEntry {
  std::string sample_id;
  std::string system;
  std::string translation;
};

// Uniform without-replacement subset of `size` elements, deterministic in
// the seed and preserving dataset order. Raises SubsetTooLarge when size
// exceeds the dataset.
std::vector<SourceSample> sample_subset(const std::vector<SourceSample>& dataset,
                                        std::size_t size, std::uint64_t seed);

// Arithmetic mean; empty input raises std::invalid_argument.
double gea_aggregate(std::span<const double> scores);

// (times best - times worst) / ballots for the aspect, in [-1, 1]. Raises
// NoBallots when the aspect has no ballots.
double best_worst_score(const std::vector<BestWorstBallot>& ballots,
                        std::string_view system, Aspect aspect);

// Fleiss' kappa over an item x category count matrix; every row must sum to
// the same rater count n >= 2. Computed in exact integer arithmetic, so
// perfect agreement returns exactly 1 and chance-level agreement exactly 0.
double fleiss_kappa(const std::vector<std::vector<int>>& ratings);

// Eval input JSONL: one {"sample_id", "system", "translation"} object per
// line. Malformed lines raise DatasetError naming the line.
std::vector<TranslationEntry> parse_eval_jsonl(std::string_view text);
std::string to_eval_jsonl(const std::vector<TranslationEntry>& entries);
std::vector<TranslationEntry> load_eval_jsonl(const std::string& path);
void save_eval_jsonl(const std::string& path,
                     const std::vector<TranslationEntry>& entries);

// Ballot CSV with header item_id,aspect,rater_id,best_system,worst_system.
// Fields are comma-split verbatim (no quoting); best = worst or an unknown
// aspect raise DatasetError naming the line.
std::vector<BestWorstBallot> parse_ballots_csv(std::string_view text);
std::string to_ballots_csv(const std::vector<BestWorstBallot>& ballots);
std::vector<BestWorstBallot> load_ballots_csv(const std::string& path);

// Judges one system's entries against the dataset (matched by sample id)
// and returns its run with one score per entry under `metric_name`. Entries
// for other systems are ignored; an entry whose sample id is unknown raises
// DatasetError. Judge failures propagate.
EvalRun score_translations(const std::vector<TranslationEntry>& entries,
                           const std::vector<SourceSample>& dataset,
                           judge::Judge& judge, std::string_view system,
                           std::string_view dataset_id,
                           std::string_view metric_name);

// CSV ("section,system,dataset,metric,value,count", %.6f values, rows
// sorted) plus a plain-text rendering of the same rows. Sections: "metrics"
// averages each run's per-metric scores; "best_worst" scores every system
// named by the aspect's ballots; "kappa" reports rater agreement on best
// votes per aspect when the vote matrix is well-formed, and the summary
// notes aspects where it is not.
struct EvalReport {
  std::string csv;
  std::string summary;
};

EvalReport build_report(const std::vector<EvalRun>& runs,
                        const std::vector<BestWorstBallot>& ballots);

}  // namespace stylerl::eval
