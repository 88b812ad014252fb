#include <benchmark/benchmark.h>

#include <vector>

#include "stylerl/env.hpp"
#include "stylerl/judge/mock.hpp"
#include "stylerl/policy.hpp"
#include "stylerl/train.hpp"

namespace {

using namespace stylerl;

// One full training step per iteration: rollouts, mock judging, rewards,
// advantages, gradient, update. The dominant cost of any experiment.
void BM_train_step(benchmark::State& state) {
  env::StyleWorldConfig w;
  w.n_sources = static_cast<int>(state.range(0));
  w.seed = 9;
  const auto dataset = env::generate_sources(w);
  const policy::TemplateSequencePolicy policy{policy::CategoricalStylePolicy{}};
  judge::MockJudge judge;

  train::TrainingConfig cfg;
  cfg.n_rollouts = 8;
  cfg.batch_size = static_cast<int>(state.range(0));
  cfg.learning_rate = 0.1;
  cfg.rollout_temperature = 1.0;
  cfg.epochs = 1;
  cfg.max_steps = 1;
  cfg.seed = 7;
  const std::vector<double> zeros(policy.param_count(), 0.0);

  for (auto _ : state) {
    benchmark::DoNotOptimize(
        train::train(cfg, dataset, policy, judge, zeros, zeros));
  }
}
BENCHMARK(BM_train_step)->Arg(16)->Arg(64);

void BM_mean_action_mass(benchmark::State& state) {
  env::StyleWorldConfig w;
  w.n_sources = 200;
  const auto dataset = env::generate_sources(w);
  const policy::CategoricalStylePolicy policy;
  const std::vector<double> theta(policy.param_count(), 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train::mean_action_mass(policy, theta, dataset));
  }
}
BENCHMARK(BM_mean_action_mass);

}  // namespace

