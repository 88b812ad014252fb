#include <benchmark/benchmark.h>

#include <vector>

#include "stylerl/grpo.hpp"
#include "stylerl/policy.hpp"
#include "stylerl/rng.hpp"

namespace {

using namespace stylerl;

grpo::RolloutGroup make_group(std::size_t n, const policy::PolicyInterface& p,
                              const std::vector<double>& theta, Rng& rng) {
  grpo::RolloutGroup group;
  group.source.id = "bench";
  group.source.source_text = "bench source";
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(rng.next_below(6));
    group.actions.push_back(a);
    group.logp_old.push_back(p.log_prob(group.source, a, theta));
    rewards::RewardBreakdown b;
    b.r_all = rng.next_double(0.0, 140.0);
    group.rewards.push_back(b);
  }
  grpo::fill_advantages(group);
  return group;
}

void BM_fill_advantages(benchmark::State& state) {
  Rng rng = derive_stream(1, "bench-adv");
  const policy::CategoricalStylePolicy p;
  std::vector<double> theta(p.param_count(), 0.1);
  auto group = make_group(static_cast<std::size_t>(state.range(0)), p, theta, rng);
  for (auto _ : state) {
    grpo::fill_advantages(group);
    benchmark::DoNotOptimize(group.advantages.data());
  }
}
BENCHMARK(BM_fill_advantages)->Arg(8)->Arg(64);

void BM_grpo_objective(benchmark::State& state) {
  Rng rng = derive_stream(2, "bench-obj");
  const policy::CategoricalStylePolicy p;
  std::vector<double> theta_old(p.param_count());
  for (auto& v : theta_old) v = rng.next_double(-1.0, 1.0);
  std::vector<double> theta_new = theta_old;
  for (auto& v : theta_new) v += rng.next_double(-0.2, 0.2);
  const auto group =
      make_group(static_cast<std::size_t>(state.range(0)), p, theta_old, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grpo::grpo_objective(group, theta_new, theta_old, theta_old, 0.2, 1e-3, p));
  }
}
BENCHMARK(BM_grpo_objective)->Arg(8)->Arg(64);

void BM_grpo_gradient(benchmark::State& state) {
  Rng rng = derive_stream(3, "bench-grad");
  const policy::CategoricalStylePolicy p;
  std::vector<double> theta_old(p.param_count());
  for (auto& v : theta_old) v = rng.next_double(-1.0, 1.0);
  std::vector<double> theta_new = theta_old;
  for (auto& v : theta_new) v += rng.next_double(-0.2, 0.2);
  const auto group =
      make_group(static_cast<std::size_t>(state.range(0)), p, theta_old, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grpo::grpo_gradient(group, theta_new, theta_old, theta_old, 0.2, 1e-3, p));
  }
}
BENCHMARK(BM_grpo_gradient)->Arg(8)->Arg(64);

}  // namespace

