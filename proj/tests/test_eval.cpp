#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stylerl/env.hpp"
#include "stylerl/eval.hpp"
#include "stylerl/judge/mock.hpp"

using namespace stylerl;
using namespace stylerl::eval;

namespace {

std::vector<SourceSample> tiny_dataset(int n) {
  std::vector<SourceSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    SourceSample s;
    s.id = "d-" + std::to_string(i);
    s.source_text = "line " + std::to_string(i);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> ids(const std::vector<SourceSample>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& s : xs) out.push_back(s.id);
  return out;
}

BestWorstBallot ballot(std::string item, Aspect aspect, std::string rater,
                       std::string best, std::string worst) {
  return BestWorstBallot{std::move(item), aspect, std::move(rater),
                         std::move(best), std::move(worst)};
}

}  // namespace

TEST_CASE("subsets are deterministic, order-stable, and bounded") {
  const auto dataset = tiny_dataset(100);
  const auto a = sample_subset(dataset, 30, 5);
  const auto b = sample_subset(dataset, 30, 5);
  REQUIRE(a.size() == 30);
  CHECK(ids(a) == ids(b));

  // Order-stable: the subset respects dataset order.
  const auto order = ids(a);
  auto sorted_by_position = order;
  std::sort(sorted_by_position.begin(), sorted_by_position.end(),
            [&dataset](const std::string& x, const std::string& y) {
              auto pos = [&dataset](const std::string& id) {
                for (std::size_t i = 0; i < dataset.size(); ++i) {
                  if (dataset[i].id == id) return i;
                }
                return dataset.size();
              };
              return pos(x) < pos(y);
            });
  CHECK(order == sorted_by_position);

  CHECK(ids(sample_subset(dataset, 100, 9)) == ids(dataset));
  CHECK(sample_subset(dataset, 0, 9).empty());
  CHECK_THROWS_AS(sample_subset(dataset, 101, 9), SubsetTooLarge);
}

TEST_CASE("disjoint-seed subsets overlap at the hypergeometric rate") {
  const auto dataset = tiny_dataset(2000);
  const auto a = sample_subset(dataset, 400, 101);
  const auto b = sample_subset(dataset, 400, 202);
  const auto ia = ids(a);
  const auto ib = ids(b);
  const std::set<std::string> sb(ib.begin(), ib.end());
  std::size_t overlap = 0;
  for (const auto& id : ia) overlap += sb.count(id);
  // E = 80, sigma = 7.157: a 3-sigma band.
  CHECK(overlap >= 59);
  CHECK(overlap <= 101);
}

TEST_CASE("aggregation is the arithmetic mean") {
  CHECK(gea_aggregate(std::vector<double>{75.38}) ==
        doctest::Approx(75.38).epsilon(1e-15));
  CHECK(gea_aggregate(std::vector<double>{4.5, 4.5, 4.5}) ==
        doctest::Approx(4.5).epsilon(1e-15));
  CHECK_THROWS_AS(gea_aggregate(std::vector<double>{}), std::invalid_argument);

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  std::vector<double> xs(257);
  for (auto& x : xs) x = dist(gen);
  long double acc = 0.0L;
  for (double x : xs) acc += x;
  const double expected = static_cast<double>(acc / xs.size());
  CHECK(gea_aggregate(xs) == doctest::Approx(expected).epsilon(1e-12));

  std::vector<double> shifted = xs;
  for (auto& x : shifted) x += 13.25;
  CHECK(gea_aggregate(shifted) ==
        doctest::Approx(gea_aggregate(xs) + 13.25).epsilon(1e-12));
}

TEST_CASE("best-worst scores count net best picks per ballot") {
  std::vector<BestWorstBallot> ballots;
  for (int i = 0; i < 4; ++i) {
    ballots.push_back(ballot("i" + std::to_string(i), Aspect::fluency,
                             "r" + std::to_string(i), "ours", "base"));
  }
  ballots.push_back(ballot("i4", Aspect::fluency, "r4", "base", "ours"));
  for (int i = 5; i < 10; ++i) {
    ballots.push_back(ballot("i" + std::to_string(i), Aspect::fluency,
                             "r" + std::to_string(i), "base", "other"));
  }

  CHECK(best_worst_score(ballots, "ours", Aspect::fluency) ==
        doctest::Approx(0.3).epsilon(1e-15));
  CHECK(best_worst_score(ballots, "unseen", Aspect::fluency) == 0.0);
  CHECK_THROWS_AS(best_worst_score(ballots, "ours", Aspect::literary_quality),
                  NoBallots);

  // Each ballot adds one +1 and one -1, so system scores sum to zero.
  double total = 0.0;
  for (const char* system : {"ours", "base", "other", "unseen"}) {
    total += best_worst_score(ballots, system, Aspect::fluency);
  }
  CHECK(total == doctest::Approx(0.0).epsilon(1e-15));

  std::vector<BestWorstBallot> sweep;
  for (int i = 0; i < 6; ++i) {
    sweep.push_back(ballot("i" + std::to_string(i), Aspect::semantic_accuracy,
                           "r", "winner", "loser"));
  }
  CHECK(best_worst_score(sweep, "winner", Aspect::semantic_accuracy) == 1.0);
  CHECK(best_worst_score(sweep, "loser", Aspect::semantic_accuracy) == -1.0);
}

TEST_CASE("perfect agreement yields kappa exactly 1") {
  const std::vector<std::vector<int>> ratings = {
      {3, 0, 0}, {0, 3, 0}, {3, 0, 0}, {0, 0, 3}};
  CHECK(fleiss_kappa(ratings) == 1.0);
}

TEST_CASE("chance-level agreement yields kappa exactly 0") {
  // Found by exhaustive search over small matrices: one unanimous item plus
  // one fully split item makes observed agreement equal chance agreement.
  const std::vector<std::vector<int>> ratings = {{3, 0, 0}, {1, 1, 1}};
  CHECK(fleiss_kappa(ratings) == 0.0);
}

TEST_CASE("the canonical worked matrix matches its hand-computed kappa") {
  const std::vector<std::vector<int>> ratings = {
      {0, 0, 0, 0, 14}, {0, 2, 6, 4, 2}, {0, 0, 3, 5, 6}, {0, 3, 9, 2, 0},
      {2, 2, 8, 1, 1},  {7, 7, 0, 0, 0}, {3, 2, 6, 3, 0}, {2, 5, 3, 2, 2},
      {6, 5, 2, 1, 0},  {0, 2, 2, 3, 7}};
  // 4211/20059 computed independently in exact rational arithmetic.
  CHECK(fleiss_kappa(ratings) ==
        doctest::Approx(0.20993070442195524).epsilon(1e-6));
}

TEST_CASE("kappa is invariant under item and category permutations") {
  const std::vector<std::vector<int>> ratings = {
      {2, 2, 8, 1, 1}, {7, 7, 0, 0, 0}, {3, 2, 6, 3, 0}, {2, 5, 3, 2, 2}};
  const double base = fleiss_kappa(ratings);

  std::vector<std::vector<int>> item_perm = {ratings[2], ratings[0],
                                             ratings[3], ratings[1]};
  CHECK(fleiss_kappa(item_perm) == doctest::Approx(base).epsilon(1e-15));

  std::vector<std::vector<int>> cat_perm;
  for (const auto& row : ratings) {
    cat_perm.push_back({row[4], row[2], row[0], row[1], row[3]});
  }
  CHECK(fleiss_kappa(cat_perm) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("kappa rejects ragged, degenerate, and undersized input") {
  CHECK_THROWS_AS(fleiss_kappa({{2, 1}, {2, 1, 0}}), RaggedMatrix);
  CHECK_THROWS_AS(fleiss_kappa({{2, 1}, {3, 1}}), RaggedMatrix);
  CHECK_THROWS_AS(fleiss_kappa({{4, 0}, {4, 0}}), DegenerateAgreement);
  CHECK_THROWS_AS(fleiss_kappa({}), std::invalid_argument);
  CHECK_THROWS_AS(fleiss_kappa({{1, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(fleiss_kappa({{2, -1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("ballot csv round-trips and rejects malformed rows") {
  std::vector<BestWorstBallot> ballots = {
      ballot("i1", Aspect::fluency, "r1", "a", "b"),
      ballot("i1", Aspect::literary_quality, "r2", "b", "c"),
  };
  const auto back = parse_ballots_csv(to_ballots_csv(ballots));
  CHECK(back == ballots);

  CHECK_THROWS_AS(parse_ballots_csv("nope\n"), DatasetError);
  const std::string header =
      "item_id,aspect,rater_id,best_system,worst_system\n";
  CHECK_THROWS_AS(parse_ballots_csv(header + "i,fluency,r,a\n"), DatasetError);
  CHECK_THROWS_AS(parse_ballots_csv(header + "i,fluency,r,a,a\n"),
                  DatasetError);
  CHECK_THROWS_AS(parse_ballots_csv(header + "i,sarcasm,r,a,b\n"),
                  DatasetError);
  CHECK_THROWS_AS(parse_ballots_csv(header + ",fluency,r,a,b\n"),
                  DatasetError);
  CHECK(parse_ballots_csv(header).empty());
  CHECK_THROWS_AS(parse_ballots_csv(""), DatasetError);
}

TEST_CASE("eval jsonl round-trips and rejects malformed lines") {
  std::vector<TranslationEntry> entries;
  entries.push_back({"s1", "ours", "[free] a natural reading"});
  entries.push_back({"s2", "base", "[literal] word by word"});
  const auto text = to_eval_jsonl(entries);
  const auto back = parse_eval_jsonl(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].sample_id == "s1");
  CHECK(back[1].translation == "[literal] word by word");

  CHECK_THROWS_AS(parse_eval_jsonl("not json\n"), DatasetError);
  CHECK_THROWS_AS(parse_eval_jsonl("{\"sample_id\":\"s\"}\n"), DatasetError);
  CHECK_THROWS_AS(parse_eval_jsonl(
                      "{\"sample_id\":\"\",\"system\":\"x\",\"translation\":"
                      "\"t\"}\n"),
                  DatasetError);
  CHECK(parse_eval_jsonl("").empty());
}

TEST_CASE("judged runs score the system's entries against the dataset") {
  env::StyleWorldConfig world;
  world.n_sources = 6;
  world.seed = 3;
  const auto dataset = env::generate_sources(world);
  judge::MockJudge judge;

  std::vector<TranslationEntry> entries;
  for (const auto& s : dataset) {
    entries.push_back({s.id, "ours", "[free] a natural reading"});
    entries.push_back({s.id, "base", "[literal] word by word"});
  }

  const auto ours = score_translations(entries, dataset, judge, "ours",
                                       "styleworld", "GEA100");
  const auto base = score_translations(entries, dataset, judge, "base",
                                       "styleworld", "GEA100");
  REQUIRE(ours.per_sample_scores.size() == dataset.size());
  REQUIRE(base.per_sample_scores.size() == dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    CHECK(ours.per_sample_scores[i].metric == "GEA100");
    CHECK(ours.per_sample_scores[i].value >= 0.0);
    CHECK(ours.per_sample_scores[i].value <= 100.0);
    CHECK(ours.per_sample_scores[i].value >
          base.per_sample_scores[i].value);
  }

  std::vector<TranslationEntry> unknown = {{"ghost", "ours", "[free] x"}};
  CHECK_THROWS_AS(score_translations(unknown, dataset, judge, "ours", "d",
                                     "GEA100"),
                  DatasetError);
}

TEST_CASE("reports combine metric, best-worst, and agreement tables") {
  EvalRun run_a;
  run_a.system_name = "ours";
  run_a.dataset_id = "styleworld";
  run_a.per_sample_scores = {{"s1", "GEA100", 80.0},
                             {"s2", "GEA100", 90.0},
                             {"s1", "GEA5", 4.0}};
  EvalRun run_b;
  run_b.system_name = "base";
  run_b.dataset_id = "styleworld";
  run_b.per_sample_scores = {{"s1", "GEA100", 60.0}, {"s2", "GEA100", 62.0}};

  std::vector<BestWorstBallot> ballots;
  for (int rater = 0; rater < 3; ++rater) {
    for (int item = 0; item < 2; ++item) {
      ballots.push_back(ballot("i" + std::to_string(item), Aspect::fluency,
                               "r" + std::to_string(rater),
                               rater == 2 ? "base" : "ours",
                               rater == 2 ? "ours" : "base"));
    }
  }

  const auto report = build_report({run_a, run_b}, ballots);
  const std::string expected_csv =
      "section,system,dataset,metric,value,count\n"
      "best_worst,base,-,fluency,-0.333333,6\n"
      "best_worst,ours,-,fluency,0.333333,6\n"
      "kappa,-,-,fluency,-0.500000,2\n"
      "metrics,base,styleworld,GEA100,61.000000,2\n"
      "metrics,ours,styleworld,GEA100,85.000000,2\n"
      "metrics,ours,styleworld,GEA5,4.000000,1\n";
  CHECK(report.csv == expected_csv);
  CHECK(report.summary.find("[metrics]") != std::string::npos);
  CHECK(report.summary.find("85.000000") != std::string::npos);

  const auto empty = build_report({}, {});
  CHECK(empty.csv == "section,system,dataset,metric,value,count\n");
  CHECK_FALSE(empty.summary.empty());
}

TEST_CASE("reports note aspects whose agreement is degenerate") {
  std::vector<BestWorstBallot> ballots;
  for (int rater = 0; rater < 2; ++rater) {
    ballots.push_back(ballot("i0", Aspect::fluency,
                             "r" + std::to_string(rater), "ours", "base"));
  }
  const auto report = build_report({}, ballots);
  CHECK(report.csv.find("kappa") == std::string::npos);
  CHECK(report.summary.find("kappa skipped for fluency") !=
        std::string::npos);
}
