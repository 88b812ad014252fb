#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylerl/env.hpp"
#include "stylerl/grpo.hpp"
#include "stylerl/judge/judge.hpp"
#include "stylerl/metrics.hpp"
#include "stylerl/policy.hpp"
#include "stylerl/rewards.hpp"
#include "stylerl/sample.hpp"

namespace stylerl::train {

// Hyperparameters for one training run. Defaults follow the shipped recipe
// (8 rollouts, batch 64, lr 1e-6, clip 0.2, KL 1e-3, alpha 20, temperature
// 0.6, 2 epochs); desk-scale experiments typically shrink the batch and
// raise the learning rate. alpha is taken at face value: selecting a coarse
// scale variant does not silently remap it (the CLI applies the per-variant
// default when the user picks a variant without an explicit alpha).
struct TrainingConfig {
  int n_rollouts = 8;
  int batch_size = 64;
  double learning_rate = 1e-6;
  double epsilon_clip = 0.2;
  double kl_coeff = 1e-3;
  double alpha = 20.0;
  double rollout_temperature = 0.6;
  int epochs = 2;
  std::uint64_t seed = 1;
  rewards::RewardVariant reward_variant = rewards::RewardVariant::standard;
  double lp_offset = 400.0;
  double lp_scale = 400.0;
  int short_penalty_k = 10;
  // Stop after this many gradient steps across all epochs; 0 means no cap.
  int max_steps = 0;
};

// Raises std::invalid_argument when a field violates its contract.
void validate_config(const TrainingConfig& config);

// The reward configuration a run derives from its training configuration.
rewards::RewardVariantConfig reward_config(const TrainingConfig& config);

// Resumable training state. step counts completed gradient steps; epoch and
// batch_index address the next batch to run. theta_ref rides along so a
// resumed run keeps its original KL anchor.
struct Checkpoint {
  int version = 1;
  std::vector<double> theta;
  std::vector<double> theta_ref;
  int step = 0;
  int epoch = 0;
  int batch_index = 0;
  std::uint64_t seed = 0;
};

std::string to_checkpoint_json(const Checkpoint& ckpt);
Checkpoint parse_checkpoint_json(std::string_view text);
void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

struct TrainResult {
  std::vector<double> theta;
  Checkpoint checkpoint;  // resume point after the last completed batch
  std::vector<MetricRecord> metrics;
  std::vector<env::TrueQualityRecord> true_quality;
  std::vector<grpo::GrpoStepReport> step_reports;
  // Set when the judge became unavailable; checkpoint then addresses the
  // batch that never completed, so a resumed run replays it exactly.
  bool aborted_by_judge = false;
  std::string abort_reason;
};

// GRPO training. Per batch: snapshot theta_old, sample n_rollouts
// generations per source at the rollout temperature, judge them as one
// batch, normalize rewards into advantages per group, and take one ascent
// step on the mean group gradient. theta_ref stays fixed at the cold-start
// snapshot for the whole run. Fully deterministic given (config.seed,
// config, dataset, mock judge): per-source rollout streams are derived from
// (seed, source id, step) and the epoch shuffle from (seed, epoch), so
// results are independent of judging concurrency and bit-stable across
// resumes.
//
// True-quality records are emitted for steps whose sources all carry
// synthetic quality features and skipped otherwise.
TrainResult train(const TrainingConfig& config,
                  const std::vector<SourceSample>& dataset,
                  const policy::TextPolicy& policy, judge::Judge& judge,
                  std::span<const double> theta_init,
                  std::span<const double> theta_ref,
                  const Checkpoint* resume = nullptr);

// Mean action probabilities of the policy over a dataset; index = action id.
std::vector<double> mean_action_mass(const policy::PolicyInterface& policy,
                                     std::span<const double> theta,
                                     const std::vector<SourceSample>& dataset);

}  // namespace stylerl::train
