#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "stylerl/env.hpp"
#include "stylerl/judge/mock.hpp"
#include "stylerl/policy.hpp"

using namespace stylerl;
using namespace stylerl::judge;

namespace {

// A source with the exact default quality table and no jitter, so judgment
// values can be pinned as integers.
SourceSample flat_source() {
  SourceSample s;
  s.id = "flat";
  s.source_text = "a quiet river passes the village";
  s.src_lang = "English";
  s.trg_lang = "Chinese";
  s.features = {
      {"q_literal_low", 55.0},   {"q_literal_high", 60.0},
      {"q_free_low", 70.0},      {"q_free_high", 88.0},
      {"q_classical_low", 72.0}, {"q_classical_high", 75.0},
  };
  return s;
}

ParsedGeneration generation_for(StyleAction action) {
  policy::TemplateSequencePolicy policy{policy::CategoricalStylePolicy{}};
  return parse_generation(policy.render(flat_source(), action_id(action)));
}

std::string words(int n) {
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    if (i) out << ' ';
    out << "w" << i;
  }
  return out.str();
}

}  // namespace

TEST_CASE("format judgment distinguishes clean, annotated, and broken outputs") {
  MockJudge judge;
  const SourceSample s = flat_source();

  ParsedGeneration clean = generation_for({Style::free, Effort::low});
  CHECK(judge.judge_format(s, clean).category == 1);

  ParsedGeneration annotated = clean;
  annotated.translation += " (note: gloss of the idiom)";
  CHECK(judge.judge_format(s, annotated).category == 2);

  ParsedGeneration broken;
  broken.structure_ok = false;
  CHECK(judge.judge_format(s, broken).category == 3);
}

TEST_CASE("thought judgment thresholds sit at 10 and 40 tokens") {
  MockJudge judge;
  const SourceSample s = flat_source();
  ParsedGeneration g;
  g.structure_ok = true;

  g.thought = words(9);
  CHECK(judge.judge_thought(s, g).label == ThoughtLabel::lack);
  g.thought = words(10);
  CHECK(judge.judge_thought(s, g).label == ThoughtLabel::slight);
  g.thought = words(39);
  CHECK(judge.judge_thought(s, g).label == ThoughtLabel::slight);
  g.thought = words(40);
  CHECK(judge.judge_thought(s, g).label == ThoughtLabel::detailed);
  g.thought = "";
  CHECK(judge.judge_thought(s, g).label == ThoughtLabel::lack);
}

TEST_CASE("translation scores follow the biased visible quality") {
  const SourceSample s = flat_source();
  MockJudge judge;

  CHECK(judge.judge_translation(s, generation_for({Style::classical, Effort::high}))
            .score == 85);
  CHECK(judge.judge_translation(s, generation_for({Style::free, Effort::high}))
            .score == 88);
  CHECK(judge.judge_translation(s, generation_for({Style::literal, Effort::high}))
            .score == 60);
}

TEST_CASE("translation score cannot see effort") {
  const SourceSample s = flat_source();
  MockJudge judge;
  for (Style style : {Style::literal, Style::free, Style::classical}) {
    const auto low = judge.judge_translation(s, generation_for({style, Effort::low}));
    const auto high = judge.judge_translation(s, generation_for({style, Effort::high}));
    CHECK(low.score == high.score);
  }
}

TEST_CASE("translation scores quantize onto the configured scale") {
  const SourceSample s = flat_source();

  MockJudgeConfig coarse;
  coarse.scale = ScaleKind::points3;
  MockJudge judge3{coarse};
  CHECK(judge3.judge_translation(s, generation_for({Style::free, Effort::high}))
            .score == 2);
  CHECK(judge3.judge_translation(s, generation_for({Style::classical, Effort::high}))
            .score == 2);
  CHECK(judge3.judge_translation(s, generation_for({Style::literal, Effort::high}))
            .score == 1);

  MockJudgeConfig five;
  five.scale = ScaleKind::points5;
  MockJudge judge5{five};
  CHECK(judge5.judge_translation(s, generation_for({Style::free, Effort::high}))
            .score == 5);
  CHECK(judge5.judge_translation(s, generation_for({Style::classical, Effort::high}))
            .score == 5);
  CHECK(judge5.judge_translation(s, generation_for({Style::literal, Effort::high}))
            .score == 4);
}

TEST_CASE("mock judgments are pure functions of their inputs") {
  env::StyleWorldConfig config;
  config.n_sources = 10;
  const auto sources = env::generate_sources(config);
  MockJudge judge;
  for (const auto& s : sources) {
    for (const StyleAction a : all_style_actions()) {
      const ParsedGeneration g = generation_for(a);
      CHECK(judge.judge_format(s, g) == judge.judge_format(s, g));
      CHECK(judge.judge_thought(s, g) == judge.judge_thought(s, g));
      const auto t1 = judge.judge_translation(s, g);
      const auto t2 = judge.judge_translation(s, g);
      CHECK(t1.score == t2.score);
      CHECK(t1.reason == t2.reason);
    }
  }
}

TEST_CASE("unrecoverable translations raise instead of guessing") {
  MockJudge judge;
  ParsedGeneration g;
  g.structure_ok = true;
  g.thought = "some thought";
  g.translation = "no style marker here";
  CHECK_THROWS_AS(judge.judge_translation(flat_source(), g),
                  UnparseableJudgment);
}

TEST_CASE("batch scoring preserves order and matches single calls") {
  const SourceSample s = flat_source();
  MockJudge judge;
  const ParsedGeneration a = generation_for({Style::free, Effort::high});
  const ParsedGeneration b = generation_for({Style::classical, Effort::low});
  const ParsedGeneration c = generation_for({Style::literal, Effort::low});
  const std::vector<JudgeRequest> reqs = {{&s, &a}, {&s, &b}, {&s, &c}};
  const auto out = judge.score_batch(reqs);
  REQUIRE(out.size() == 3);
  CHECK(out[0].translation.score == 88);
  CHECK(out[1].translation.score == 85);
  CHECK(out[2].translation.score == 60);
  CHECK(out[0].thought.label == ThoughtLabel::detailed);
  CHECK(out[1].thought.label == ThoughtLabel::lack);
  CHECK(out[0].format.category == 1);

  const std::vector<JudgeRequest> bad = {{nullptr, &a}};
  CHECK_THROWS_AS(judge.score_batch(bad), std::invalid_argument);
}
