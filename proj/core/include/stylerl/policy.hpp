#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stylerl/rng.hpp"
#include "stylerl/sample.hpp"
#include "stylerl/style.hpp"
#include "stylerl/text.hpp"

namespace stylerl::policy {

// A policy family: a parametric distribution over a small enumerable action
// set. Parameters are always passed in explicitly, so one family object can
// serve the current, sampling-time, and reference parameter snapshots at once.
// log_prob and grad_log_prob are defined at temperature 1; temperature only
// shapes rollout sampling.
class PolicyInterface {
 public:
  virtual ~PolicyInterface() = default;

  virtual std::size_t param_count() const = 0;
  virtual int num_actions(const SourceSample& sample) const = 0;

  virtual std::vector<double> action_probs(const SourceSample& sample,
                                           std::span<const double> theta,
                                           double temperature = 1.0) const = 0;
  virtual double log_prob(const SourceSample& sample, int action,
                          std::span<const double> theta) const = 0;
  virtual std::vector<double> grad_log_prob(const SourceSample& sample,
                                            int action,
                                            std::span<const double> theta) const = 0;
  virtual int sample_action(const SourceSample& sample, double temperature,
                            std::span<const double> theta, Rng& rng) const = 0;
};

// Softmax over the six style actions. Logits are per-action biases optionally
// plus a linear read of named sample features:
//   logit[a] = theta[a] + sum_f theta[6 + a*F + f] * features[f]
// Missing features read as 0.
class CategoricalStylePolicy final : public PolicyInterface {
 public:
  explicit CategoricalStylePolicy(std::vector<std::string> feature_names = {});

  std::size_t param_count() const override;
  int num_actions(const SourceSample&) const override { return kNumStyleActions; }
  std::vector<double> action_probs(const SourceSample& sample,
                                   std::span<const double> theta,
                                   double temperature = 1.0) const override;
  double log_prob(const SourceSample& sample, int action,
                  std::span<const double> theta) const override;
  std::vector<double> grad_log_prob(const SourceSample& sample, int action,
                                    std::span<const double> theta) const override;
  int sample_action(const SourceSample& sample, double temperature,
                    std::span<const double> theta, Rng& rng) const override;

  std::vector<double> logits(const SourceSample& sample,
                             std::span<const double> theta) const;
  const std::vector<std::string>& feature_names() const { return feature_names_; }

 private:
  void check_theta(std::span<const double> theta) const;

  std::vector<std::string> feature_names_;
};

// A policy whose actions render to concrete generation text, which is what a
// judge actually scores.
class TextPolicy : public PolicyInterface {
 public:
  virtual std::string render(const SourceSample& sample, int action) const = 0;
};

// Wraps the categorical policy and renders each action as literal generation
// text: "<think>" + a fixed thought per effort class + "</think>" + a
// style-marked translation. The rendering is engineered so that
// parse_generation always succeeds on it and the action is exactly
// recoverable from the parsed segments.
class TemplateSequencePolicy final : public TextPolicy {
 public:
  explicit TemplateSequencePolicy(CategoricalStylePolicy inner);

  std::size_t param_count() const override { return inner_.param_count(); }
  int num_actions(const SourceSample& s) const override {
    return inner_.num_actions(s);
  }
  std::vector<double> action_probs(const SourceSample& sample,
                                   std::span<const double> theta,
                                   double temperature = 1.0) const override {
    return inner_.action_probs(sample, theta, temperature);
  }
  double log_prob(const SourceSample& sample, int action,
                  std::span<const double> theta) const override {
    return inner_.log_prob(sample, action, theta);
  }
  std::vector<double> grad_log_prob(const SourceSample& sample, int action,
                                    std::span<const double> theta) const override {
    return inner_.grad_log_prob(sample, action, theta);
  }
  int sample_action(const SourceSample& sample, double temperature,
                    std::span<const double> theta, Rng& rng) const override {
    return inner_.sample_action(sample, temperature, theta, rng);
  }

  const CategoricalStylePolicy& inner() const { return inner_; }

  std::string render(const SourceSample& sample, int action) const override;

  // Thought token counts per effort class: low straddles under every
  // short-thought threshold in the reward variants, high clears them all.
  static constexpr int kLowEffortTokens = 8;
  static constexpr int kHighEffortTokens = 60;

  static std::string_view thought_text(Effort e);
  static std::string translation_text(Style s);

  // Action recovery from a parsed generation: style from the leading marker
  // of the translation, effort from the thought length class.
  static std::optional<StyleAction> recover(const ParsedGeneration& parsed);

 private:
  CategoricalStylePolicy inner_;
};

// --- cold-start behavior data ---

struct BehaviorRecord {
  std::string source_id;
  StyleAction action;

  friend bool operator==(const BehaviorRecord&, const BehaviorRecord&) = default;
};

// JSONL: {"source_id", "style", "effort"} per line.
std::vector<BehaviorRecord> parse_behavior_jsonl(std::string_view text);
std::string to_behavior_jsonl(const std::vector<BehaviorRecord>& records);
std::vector<BehaviorRecord> load_behavior_jsonl(const std::string& path);
void save_behavior_jsonl(const std::string& path,
                         const std::vector<BehaviorRecord>& records);

struct BehaviorExample {
  SourceSample sample;
  int action_id = 0;
};

// Joins behavior records against a dataset by source id; unknown ids raise
// DatasetError.
std::vector<BehaviorExample> make_behavior_examples(
    const std::vector<BehaviorRecord>& records,
    const std::vector<SourceSample>& dataset);

struct MleOptions {
  double learning_rate = 0.5;
  int steps = 2000;
  // Weight of a uniform mixture folded into the fitting target. Keeps every
  // action's probability strictly positive so later RL never starts from a
  // numerically dead action.
  double smoothing = 0.02;
};

// Gradient ascent on the (smoothed) mean log-likelihood, starting from zero
// parameters. Returns the fitted parameter vector.
std::vector<double> mle_fit(const PolicyInterface& policy,
                            const std::vector<BehaviorExample>& data,
                            const MleOptions& options = {});

}  // namespace stylerl::policy
