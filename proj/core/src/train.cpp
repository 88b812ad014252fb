#include "stylerl/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "stylerl/rng.hpp"

namespace stylerl::train {

using nlohmann::json;

void validate_config(const TrainingConfig& c) {
  if (c.n_rollouts < 2) {
    throw std::invalid_argument("config: n_rollouts must be >= 2");
  }
  if (c.batch_size < 1) {
    throw std::invalid_argument("config: batch_size must be >= 1");
  }
  if (!(c.learning_rate > 0.0)) {
    throw std::invalid_argument("config: learning_rate must be positive");
  }
  if (!(c.epsilon_clip > 0.0 && c.epsilon_clip < 1.0)) {
    throw std::invalid_argument("config: epsilon_clip must lie in (0,1)");
  }
  if (c.kl_coeff < 0.0) {
    throw std::invalid_argument("config: kl_coeff must be >= 0");
  }
  if (c.alpha < 0.0) {
    throw std::invalid_argument("config: alpha must be >= 0");
  }
  if (!(c.rollout_temperature > 0.0)) {
    throw std::invalid_argument("config: rollout_temperature must be positive");
  }
  if (c.epochs < 0) {
    throw std::invalid_argument("config: epochs must be >= 0");
  }
  if (c.max_steps < 0) {
    throw std::invalid_argument("config: max_steps must be >= 0");
  }
  if (!(c.lp_scale > 0.0)) {
    throw std::invalid_argument("config: lp_scale must be positive");
  }
  if (c.short_penalty_k < 0) {
    throw std::invalid_argument("config: short_penalty_k must be >= 0");
  }
}

rewards::RewardVariantConfig reward_config(const TrainingConfig& c) {
  rewards::RewardVariantConfig r;
  r.variant = c.reward_variant;
  r.alpha = c.alpha;
  r.lp_offset = c.lp_offset;
  r.lp_scale = c.lp_scale;
  r.short_penalty_k = c.short_penalty_k;
  return r;
}

std::string to_checkpoint_json(const Checkpoint& ckpt) {
  json j;
  j["version"] = ckpt.version;
  j["theta"] = ckpt.theta;
  j["theta_ref"] = ckpt.theta_ref;
  j["step"] = ckpt.step;
  j["epoch"] = ckpt.epoch;
  j["batch_index"] = ckpt.batch_index;
  j["seed"] = ckpt.seed;
  return j.dump() + "\n";
}

Checkpoint parse_checkpoint_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DatasetError("checkpoint: not a JSON object");
  }
  Checkpoint c;
  c.version = j.value("version", 0);
  if (c.version != 1) {
    throw DatasetError("checkpoint: unsupported version " +
                       std::to_string(c.version));
  }
  c.theta = j.value("theta", std::vector<double>{});
  c.theta_ref = j.value("theta_ref", std::vector<double>{});
  c.step = j.value("step", 0);
  c.epoch = j.value("epoch", 0);
  c.batch_index = j.value("batch_index", 0);
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  write_text_file(path, to_checkpoint_json(ckpt));
}

Checkpoint load_checkpoint(const std::string& path) {
  return parse_checkpoint_json(read_text_file(path));
}

namespace {

Checkpoint make_checkpoint(std::vector<double> theta, std::vector<double> ref,
                           int step, int epoch, int batch_index,
                           std::size_t n_batches, std::uint64_t seed) {
  Checkpoint c;
  c.theta = std::move(theta);
  c.theta_ref = std::move(ref);
  c.step = step;
  c.seed = seed;
  if (batch_index >= static_cast<int>(n_batches)) {
    c.epoch = epoch + 1;
    c.batch_index = 0;
  } else {
    c.epoch = epoch;
    c.batch_index = batch_index;
  }
  return c;
}

}  // namespace

TrainResult train(const TrainingConfig& config,
                  const std::vector<SourceSample>& dataset,
                  const policy::TextPolicy& policy, judge::Judge& judge,
                  std::span<const double> theta_init,
                  std::span<const double> theta_ref,
                  const Checkpoint* resume) {
  validate_config(config);
  if (dataset.empty()) {
    throw std::invalid_argument("train: dataset is empty");
  }
  const std::size_t dim = policy.param_count();

  std::vector<double> theta;
  std::vector<double> ref;
  int step = 0;
  int cur_epoch = 0;
  int cur_batch = 0;
  if (resume != nullptr) {
    if (resume->seed != config.seed) {
      throw std::invalid_argument(
          "train: checkpoint seed differs from config seed");
    }
    theta = resume->theta;
    ref = resume->theta_ref;
    step = resume->step;
    cur_epoch = resume->epoch;
    cur_batch = resume->batch_index;
  } else {
    theta.assign(theta_init.begin(), theta_init.end());
    ref.assign(theta_ref.begin(), theta_ref.end());
  }
  if (theta.size() != dim || ref.size() != dim) {
    throw std::invalid_argument("train: parameter vector size mismatch");
  }

  const rewards::RewardVariantConfig rcfg = reward_config(config);
  const std::size_t n = dataset.size();
  const std::size_t bs = static_cast<std::size_t>(config.batch_size);
  const std::size_t n_batches = (n + bs - 1) / bs;

  TrainResult result;

  std::vector<std::size_t> order(n);
  int order_epoch = -1;

  while (cur_epoch < config.epochs) {
    if (cur_batch >= static_cast<int>(n_batches)) {
      ++cur_epoch;
      cur_batch = 0;
      continue;
    }
    if (config.max_steps > 0 && step >= config.max_steps) break;

    if (order_epoch != cur_epoch) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      Rng shuffle_rng = derive_stream(config.seed, "epoch-shuffle",
                                      static_cast<std::uint64_t>(cur_epoch));
      shuffle_rng.shuffle(order);
      order_epoch = cur_epoch;
    }

    const auto batch_started = std::chrono::steady_clock::now();
    const std::size_t lo = static_cast<std::size_t>(cur_batch) * bs;
    const std::size_t hi = std::min(n, lo + bs);

    // Rollouts under the sampling snapshot.
    const std::vector<double> theta_old = theta;
    std::vector<grpo::RolloutGroup> groups;
    groups.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      const SourceSample& s = dataset[order[i]];
      Rng rng = derive_stream(config.seed, "rollouts", fnv1a64(s.id),
                              static_cast<std::uint64_t>(step));
      grpo::RolloutGroup g;
      g.source = s;
      for (int r = 0; r < config.n_rollouts; ++r) {
        const int action = policy.sample_action(
            s, config.rollout_temperature, theta_old, rng);
        g.actions.push_back(action);
        g.generations.push_back(parse_generation(policy.render(s, action)));
        g.logp_old.push_back(policy.log_prob(s, action, theta_old));
      }
      groups.push_back(std::move(g));
    }

    // One judging pass over the whole batch, in deterministic request order.
    std::vector<judge::JudgeRequest> requests;
    requests.reserve(groups.size() * static_cast<std::size_t>(config.n_rollouts));
    for (const auto& g : groups) {
      for (const auto& gen : g.generations) {
        requests.push_back(judge::JudgeRequest{&g.source, &gen});
      }
    }
    std::vector<judge::GenerationJudgments> judgments;
    try {
      judgments = judge.score_batch(requests);
    } catch (const judge::JudgeUnavailable& e) {
      result.aborted_by_judge = true;
      result.abort_reason = e.what();
      result.theta = theta;
      result.checkpoint =
          make_checkpoint(std::move(theta), std::move(ref), step, cur_epoch,
                          cur_batch, n_batches, config.seed);
      return result;
    }
    if (judgments.size() != requests.size()) {
      throw std::runtime_error("train: judge returned a short batch");
    }

    std::size_t cursor = 0;
    for (auto& g : groups) {
      for (std::size_t r = 0; r < g.generations.size(); ++r, ++cursor) {
        g.rewards.push_back(rewards::compose_reward(
            g.generations[r], judgments[cursor].format,
            judgments[cursor].thought, judgments[cursor].translation, rcfg));
      }
      grpo::fill_advantages(g);
    }

    // One ascent step on the mean group gradient, plus instrumentation at
    // the pre-update point.
    std::vector<double> grad(dim, 0.0);
    double objective_acc = 0.0;
    double kl_acc = 0.0;
    double ratio_acc = 0.0;
    std::size_t ratio_count = 0;
    std::size_t clip_count = 0;
    for (const auto& g : groups) {
      const std::vector<double> gg =
          grpo::grpo_gradient(g, theta, theta_old, ref, config.epsilon_clip,
                              config.kl_coeff, policy);
      for (std::size_t j = 0; j < dim; ++j) grad[j] += gg[j];
      objective_acc +=
          grpo::grpo_objective(g, theta, theta_old, ref, config.epsilon_clip,
                               config.kl_coeff, policy);
      kl_acc += grpo::kl_divergence(theta, ref, g.source, policy);
      for (std::size_t r = 0; r < g.actions.size(); ++r) {
        const double ratio = grpo::importance_ratio(
            policy.log_prob(g.source, g.actions[r], theta), g.logp_old[r]);
        ratio_acc += ratio;
        ++ratio_count;
        if (ratio < 1.0 - config.epsilon_clip ||
            ratio > 1.0 + config.epsilon_clip) {
          ++clip_count;
        }
      }
    }
    const double inv_groups = 1.0 / static_cast<double>(groups.size());
    for (double& v : grad) v *= inv_groups;
    for (std::size_t j = 0; j < dim; ++j) {
      theta[j] += config.learning_rate * grad[j];
    }

    grpo::GrpoStepReport report;
    report.step = step;
    report.objective_value = objective_acc * inv_groups;
    report.mean_ratio = ratio_acc / static_cast<double>(ratio_count);
    report.clip_fraction =
        static_cast<double>(clip_count) / static_cast<double>(ratio_count);
    report.kl_value = kl_acc * inv_groups;
    double norm_sq = 0.0;
    for (double v : grad) norm_sq += v * v;
    report.grad_norm = std::sqrt(norm_sq);
    result.step_reports.push_back(report);

    MetricRecord rec;
    rec.step = step;
    double reward_acc = 0.0;
    double tokens_acc = 0.0;
    double trans_acc = 0.0;
    double true_quality_acc = 0.0;
    bool oracle_ok = true;
    std::map<std::string, double> hist = {
        {"literal", 0.0}, {"free", 0.0}, {"classical", 0.0}};
    std::size_t rollout_total = 0;
    for (const auto& g : groups) {
      for (std::size_t r = 0; r < g.actions.size(); ++r) {
        const auto& b = g.rewards[r];
        reward_acc += b.r_all;
        tokens_acc += b.thought_tokens;
        trans_acc += b.r_trans;
        const StyleAction a = action_from_id(g.actions[r]);
        hist[std::string(style_name(a.style))] += 1.0;
        const auto it = g.source.features.find(quality_feature_key(a));
        if (it == g.source.features.end()) {
          oracle_ok = false;
        } else {
          true_quality_acc += it->second;
        }
        ++rollout_total;
      }
    }
    const double inv_rollouts = 1.0 / static_cast<double>(rollout_total);
    rec.mean_reward = reward_acc * inv_rollouts;
    rec.mean_thought_length_tokens = tokens_acc * inv_rollouts;
    rec.mean_translation_reward = trans_acc * inv_rollouts;
    for (auto& [key, value] : hist) value *= inv_rollouts;
    rec.style_histogram = std::move(hist);
    rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - batch_started)
                           .count();
    result.metrics.push_back(std::move(rec));

    if (oracle_ok) {
      result.true_quality.push_back(
          env::TrueQualityRecord{step, true_quality_acc * inv_rollouts});
    }

    ++step;
    ++cur_batch;
  }

  result.theta = theta;
  result.checkpoint = make_checkpoint(std::move(theta), std::move(ref), step,
                                      cur_epoch, cur_batch, n_batches,
                                      config.seed);
  return result;
}

std::vector<double> mean_action_mass(const policy::PolicyInterface& policy,
                                     std::span<const double> theta,
                                     const std::vector<SourceSample>& dataset) {
  if (dataset.empty()) {
    throw std::invalid_argument("mean_action_mass: dataset is empty");
  }
  std::vector<double> acc;
  for (const auto& s : dataset) {
    const std::vector<double> p = policy.action_probs(s, theta);
    if (acc.empty()) acc.assign(p.size(), 0.0);
    for (std::size_t a = 0; a < p.size(); ++a) acc[a] += p[a];
  }
  for (double& v : acc) v /= static_cast<double>(dataset.size());
  return acc;
}

}  // namespace stylerl::train
