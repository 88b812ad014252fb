#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stylerl/policy.hpp"
#include "stylerl/rewards.hpp"
#include "stylerl/sample.hpp"
#include "stylerl/text.hpp"

namespace stylerl::grpo {

struct GroupTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the reference policy puts zero probability on an action the
// current policy can still produce. Softmax families cannot trigger this; the
// guard exists for table-style policies.
struct SupportMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One source's rollouts: the sampled actions with their rendered generations,
// the log-probabilities recorded under the sampling snapshot, rewards, and
// group-normalized advantages.
struct RolloutGroup {
  SourceSample source;
  std::vector<int> actions;
  std::vector<ParsedGeneration> generations;
  std::vector<double> logp_old;
  std::vector<rewards::RewardBreakdown> rewards;
  std::vector<double> advantages;
};

// Per-step training instrumentation.
struct GrpoStepReport {
  int step = 0;
  double objective_value = 0.0;
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
  double kl_value = 0.0;
  double grad_norm = 0.0;
};

// Normalizes rewards within one group: (r - mean) / population std. Groups
// whose std falls under 1e-8 are degenerate and map to all-zero advantages;
// fewer than two rollouts raise GroupTooSmall.
std::vector<double> group_advantages(std::span<const double> rewards);

// Fills group.advantages from the overall rewards of group.rewards.
void fill_advantages(RolloutGroup& group);

// exp(logp_new - logp_old), saturated to a large finite cap instead of
// overflowing to infinity.
double importance_ratio(double logp_new, double logp_old);

// min(ratio * A, clip(ratio, 1-eps, 1+eps) * A). epsilon must lie in (0,1).
double clipped_term(double ratio, double advantage, double epsilon);

// Exact KL(pi_new || pi_ref) for one source by enumerating the action space.
double kl_divergence(std::span<const double> theta_new,
                     std::span<const double> theta_ref,
                     const SourceSample& source,
                     const policy::PolicyInterface& policy);

// Mean clipped surrogate over the group minus kl_coeff times the KL to the
// reference snapshot. logp_old stored in the group takes precedence; when the
// group carries none, it is recomputed from theta_old.
double grpo_objective(const RolloutGroup& group,
                      std::span<const double> theta_new,
                      std::span<const double> theta_old,
                      std::span<const double> theta_ref, double epsilon,
                      double kl_coeff, const policy::PolicyInterface& policy);

// Analytic gradient of grpo_objective in theta_new. The min selects a branch
// before differentiation: rollouts whose clipped branch is strictly smaller
// contribute no policy-gradient term.
std::vector<double> grpo_gradient(const RolloutGroup& group,
                                  std::span<const double> theta_new,
                                  std::span<const double> theta_old,
                                  std::span<const double> theta_ref,
                                  double epsilon, double kl_coeff,
                                  const policy::PolicyInterface& policy);

struct GradCheckReport {
  int instances = 0;
  double max_relative_error = 0.0;
};

// Compares grpo_gradient against central finite differences of
// grpo_objective on randomly generated instances (random parameter
// snapshots, group sizes 2-8, rewards on the overall-reward scale),
// skipping instances probed too close to a clip kink. The relative error is
// |fd - analytic| / max(1, |analytic|) per coordinate.
GradCheckReport finite_difference_check(int instances, std::uint64_t seed,
                                        double epsilon = 0.2,
                                        double kl_coeff = 1e-3);

}  // namespace stylerl::grpo
