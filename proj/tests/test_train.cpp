#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stylerl/env.hpp"
#include "stylerl/judge/mock.hpp"
#include "stylerl/metrics.hpp"
#include "stylerl/train.hpp"

using namespace stylerl;
using namespace stylerl::train;

namespace {

struct Fixture {
  std::vector<SourceSample> dataset;
  policy::TemplateSequencePolicy policy{policy::CategoricalStylePolicy{}};
  judge::MockJudge judge{};
  std::vector<double> theta0;

  explicit Fixture(int n_sources = 12) {
    env::StyleWorldConfig world;
    world.n_sources = n_sources;
    world.seed = 7;
    dataset = env::generate_sources(world);
    theta0.assign(policy.param_count(), 0.0);
  }
};

TrainingConfig small_config() {
  TrainingConfig c;
  c.n_rollouts = 4;
  c.batch_size = 4;
  c.learning_rate = 0.1;
  c.rollout_temperature = 1.0;
  c.epochs = 2;
  c.seed = 11;
  return c;
}

// Passes calls through to a real judge until a chosen batch, then reports the
// backend as gone.
class FlakyJudge final : public judge::Judge {
 public:
  FlakyJudge(judge::Judge& inner, int fail_on_call)
      : inner_(inner), fail_on_call_(fail_on_call) {}

  judge::FormatJudgment judge_format(const SourceSample& s,
                                     const ParsedGeneration& p) override {
    return inner_.judge_format(s, p);
  }
  judge::ThoughtJudgment judge_thought(const SourceSample& s,
                                       const ParsedGeneration& p) override {
    return inner_.judge_thought(s, p);
  }
  judge::TranslationJudgment judge_translation(
      const SourceSample& s, const ParsedGeneration& p) override {
    return inner_.judge_translation(s, p);
  }
  std::vector<judge::GenerationJudgments> score_batch(
      const std::vector<judge::JudgeRequest>& requests) override {
    if (calls_++ == fail_on_call_) {
      throw judge::JudgeUnavailable("backend went away");
    }
    return inner_.score_batch(requests);
  }

 private:
  judge::Judge& inner_;
  int fail_on_call_;
  int calls_ = 0;
};

}  // namespace

TEST_CASE("two runs with one seed produce byte-identical metrics") {
  Fixture f;
  const TrainingConfig config = small_config();
  const auto a = train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  const auto b = train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  REQUIRE_FALSE(a.metrics.empty());
  CHECK(to_metrics_jsonl(a.metrics) == to_metrics_jsonl(b.metrics));
  CHECK(a.theta == b.theta);
  CHECK(to_checkpoint_json(a.checkpoint) == to_checkpoint_json(b.checkpoint));
}

TEST_CASE("a split run resumed from its checkpoint matches the full run") {
  Fixture f;
  const TrainingConfig full = small_config();
  const auto whole =
      train::train(full, f.dataset, f.policy, f.judge, f.theta0, f.theta0);

  TrainingConfig first_leg = full;
  first_leg.max_steps = 2;
  const auto leg1 =
      train::train(first_leg, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  CHECK(leg1.metrics.size() == 2);
  CHECK(leg1.checkpoint.step == 2);

  const auto leg2 = train::train(full, f.dataset, f.policy, f.judge, f.theta0,
                          f.theta0, &leg1.checkpoint);

  CHECK(to_metrics_jsonl(whole.metrics) ==
        to_metrics_jsonl(leg1.metrics) + to_metrics_jsonl(leg2.metrics));
  CHECK(whole.theta == leg2.theta);
  CHECK(to_checkpoint_json(whole.checkpoint) ==
        to_checkpoint_json(leg2.checkpoint));
}

TEST_CASE("zero epochs returns the initial parameters and no metrics") {
  Fixture f;
  TrainingConfig config = small_config();
  config.epochs = 0;
  const auto out =
      train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  CHECK(out.theta == f.theta0);
  CHECK(out.metrics.empty());
  CHECK(out.step_reports.empty());
  CHECK(out.checkpoint.step == 0);
  CHECK_FALSE(out.aborted_by_judge);
}

TEST_CASE("a judge outage aborts with a checkpoint that replays exactly") {
  Fixture f;
  const TrainingConfig config = small_config();
  const auto whole =
      train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);

  FlakyJudge flaky(f.judge, 3);
  const auto broken =
      train::train(config, f.dataset, f.policy, flaky, f.theta0, f.theta0);
  CHECK(broken.aborted_by_judge);
  CHECK(broken.abort_reason == "backend went away");
  CHECK(broken.metrics.size() == 3);
  CHECK(broken.checkpoint.step == 3);

  const auto resumed = train::train(config, f.dataset, f.policy, f.judge, f.theta0,
                             f.theta0, &broken.checkpoint);
  CHECK_FALSE(resumed.aborted_by_judge);
  CHECK(to_metrics_jsonl(whole.metrics) ==
        to_metrics_jsonl(broken.metrics) + to_metrics_jsonl(resumed.metrics));
  CHECK(whole.theta == resumed.theta);
}

TEST_CASE("evaluation-time ratios sit at 1 with zero clipping") {
  Fixture f;
  const auto out = train::train(small_config(), f.dataset, f.policy, f.judge,
                         f.theta0, f.theta0);
  REQUIRE_FALSE(out.step_reports.empty());
  for (const auto& r : out.step_reports) {
    CHECK(r.mean_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.clip_fraction == 0.0);
    CHECK(r.kl_value >= -1e-9);
    CHECK(std::isfinite(r.objective_value));
    CHECK(std::isfinite(r.grad_norm));
  }
}

TEST_CASE("each step's style histogram is a distribution over all styles") {
  Fixture f;
  const auto out = train::train(small_config(), f.dataset, f.policy, f.judge,
                         f.theta0, f.theta0);
  for (const auto& m : out.metrics) {
    REQUIRE(m.style_histogram.size() == 3);
    double total = 0.0;
    for (const auto& [style, share] : m.style_histogram) {
      CHECK(share >= 0.0);
      total += share;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("synthetic sources yield one true-quality record per step") {
  Fixture f;
  const auto out = train::train(small_config(), f.dataset, f.policy, f.judge,
                         f.theta0, f.theta0);
  REQUIRE(out.true_quality.size() == out.metrics.size());
  for (std::size_t i = 0; i < out.true_quality.size(); ++i) {
    CHECK(out.true_quality[i].step == out.metrics[i].step);
    CHECK(out.true_quality[i].mean_true_quality > 0.0);
  }
}

TEST_CASE("checkpoint json round-trips doubles exactly") {
  Checkpoint c;
  c.theta = {1.0 / 3.0, std::sqrt(2.0), -7.25e-13, 690.0};
  c.theta_ref = {0.0, -0.1};
  c.step = 17;
  c.epoch = 1;
  c.batch_index = 2;
  c.seed = 123456789012345ull;
  const auto back = parse_checkpoint_json(to_checkpoint_json(c));
  CHECK(back.version == 1);
  CHECK(back.theta == c.theta);
  CHECK(back.theta_ref == c.theta_ref);
  CHECK(back.step == c.step);
  CHECK(back.epoch == c.epoch);
  CHECK(back.batch_index == c.batch_index);
  CHECK(back.seed == c.seed);
}

TEST_CASE("checkpoint parsing rejects foreign versions and non-objects") {
  CHECK_THROWS_AS(parse_checkpoint_json("[1,2]"), DatasetError);
  CHECK_THROWS_AS(parse_checkpoint_json("{\"version\":2}"), DatasetError);
  CHECK_THROWS_AS(parse_checkpoint_json("not json"), DatasetError);
}

TEST_CASE("config validation rejects out-of-contract fields") {
  const TrainingConfig good = small_config();
  CHECK_NOTHROW(validate_config(good));

  auto expect_throw = [](TrainingConfig c) {
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  };
  { auto c = good; c.n_rollouts = 1; expect_throw(c); }
  { auto c = good; c.batch_size = 0; expect_throw(c); }
  { auto c = good; c.learning_rate = 0.0; expect_throw(c); }
  { auto c = good; c.epsilon_clip = 0.0; expect_throw(c); }
  { auto c = good; c.epsilon_clip = 1.0; expect_throw(c); }
  { auto c = good; c.kl_coeff = -1e-3; expect_throw(c); }
  { auto c = good; c.alpha = -1.0; expect_throw(c); }
  { auto c = good; c.rollout_temperature = 0.0; expect_throw(c); }
  { auto c = good; c.epochs = -1; expect_throw(c); }
  { auto c = good; c.max_steps = -1; expect_throw(c); }
  { auto c = good; c.lp_scale = 0.0; expect_throw(c); }
  { auto c = good; c.short_penalty_k = -1; expect_throw(c); }
}

TEST_CASE("training rejects a checkpoint minted under another seed") {
  Fixture f;
  TrainingConfig config = small_config();
  config.max_steps = 1;
  const auto leg =
      train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  TrainingConfig other = config;
  other.seed = config.seed + 1;
  CHECK_THROWS_AS(train::train(other, f.dataset, f.policy, f.judge, f.theta0,
                        f.theta0, &leg.checkpoint),
                  std::invalid_argument);
}

TEST_CASE("training rejects an empty dataset and bad parameter sizes") {
  Fixture f;
  const TrainingConfig config = small_config();
  const std::vector<SourceSample> empty;
  CHECK_THROWS_AS(train::train(config, empty, f.policy, f.judge, f.theta0, f.theta0),
                  std::invalid_argument);
  const std::vector<double> short_theta(f.policy.param_count() - 1, 0.0);
  CHECK_THROWS_AS(
      train::train(config, f.dataset, f.policy, f.judge, short_theta, f.theta0),
      std::invalid_argument);
}

TEST_CASE("reward variants flow through to the training rewards") {
  Fixture f;
  TrainingConfig config = small_config();
  config.reward_variant = rewards::RewardVariant::no_thought;
  config.max_steps = 1;
  const auto rcfg = reward_config(config);
  CHECK(rcfg.variant == rewards::RewardVariant::no_thought);
  CHECK(rcfg.alpha == config.alpha);
  CHECK_NOTHROW(
      train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0));
}

TEST_CASE("mean action mass is the dataset-average action distribution") {
  Fixture f;
  const auto mass = mean_action_mass(f.policy, f.theta0, f.dataset);
  REQUIRE(mass.size() == 6);
  double total = 0.0;
  for (const double p : mass) {
    CHECK(p == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<SourceSample> empty;
  CHECK_THROWS_AS(mean_action_mass(f.policy, f.theta0, empty),
                  std::invalid_argument);
}

TEST_CASE("rewards push probability mass toward the judge-preferred style") {
  Fixture f(16);
  TrainingConfig config = small_config();
  config.batch_size = 8;
  config.epochs = 12;
  config.learning_rate = 0.3;
  const auto out =
      train::train(config, f.dataset, f.policy, f.judge, f.theta0, f.theta0);
  const auto mass = mean_action_mass(f.policy, out.theta, f.dataset);
  const double free_mass = mass[2] + mass[3];
  CHECK(free_mass > mass[0] + mass[1]);
  CHECK(free_mass > mass[4] + mass[5]);
  CHECK(out.metrics.back().mean_reward > out.metrics.front().mean_reward);
}
