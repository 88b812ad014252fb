#include "stylerl/grpo.hpp"

#include <algorithm>
#include <cmath>

namespace stylerl::grpo {

namespace {

constexpr double kDegenerateStd = 1e-8;
// Caps exp(logp_new - logp_old) near 1e300; keeps runaway ratios finite.
constexpr double kMaxLogRatio = 690.0;

void check_group(const RolloutGroup& group, bool logp_old_required) {
  const std::size_t n = group.actions.size();
  if (n < 2) {
    throw GroupTooSmall("rollout group needs at least 2 rollouts, got " +
                        std::to_string(n));
  }
  if (group.advantages.size() != n) {
    throw std::invalid_argument("rollout group advantages not computed");
  }
  if (!group.logp_old.empty() && group.logp_old.size() != n) {
    throw std::invalid_argument("rollout group logp_old length mismatch");
  }
  if (logp_old_required && group.logp_old.empty()) {
    throw std::invalid_argument("rollout group carries no logp_old");
  }
}

}  // namespace

std::vector<double> group_advantages(std::span<const double> rewards) {
  const std::size_t n = rewards.size();
  if (n < 2) {
    throw GroupTooSmall("advantage group needs at least 2 rewards, got " +
                        std::to_string(n));
  }
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(var);
  std::vector<double> out(n, 0.0);
  if (sd < kDegenerateStd) return out;
  for (std::size_t i = 0; i < n; ++i) out[i] = (rewards[i] - mean) / sd;
  return out;
}

void fill_advantages(RolloutGroup& group) {
  std::vector<double> r;
  r.reserve(group.rewards.size());
  for (const auto& b : group.rewards) r.push_back(b.r_all);
  group.advantages = group_advantages(r);
}

double importance_ratio(double logp_new, double logp_old) {
  return std::exp(std::min(logp_new - logp_old, kMaxLogRatio));
}

double clipped_term(double ratio, double advantage, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

double kl_divergence(std::span<const double> theta_new,
                     std::span<const double> theta_ref,
                     const SourceSample& source,
                     const policy::PolicyInterface& policy) {
  const std::vector<double> p_new = policy.action_probs(source, theta_new);
  const std::vector<double> p_ref = policy.action_probs(source, theta_ref);
  double kl = 0.0;
  for (std::size_t a = 0; a < p_new.size(); ++a) {
    if (p_new[a] <= 0.0) continue;
    if (p_ref[a] <= 0.0) {
      throw SupportMismatch("reference policy has zero mass on action " +
                            std::to_string(a));
    }
    kl += p_new[a] * (std::log(p_new[a]) - std::log(p_ref[a]));
  }
  return kl;
}

double grpo_objective(const RolloutGroup& group,
                      std::span<const double> theta_new,
                      std::span<const double> theta_old,
                      std::span<const double> theta_ref, double epsilon,
                      double kl_coeff, const policy::PolicyInterface& policy) {
  check_group(group, /*logp_old_required=*/false);
  const std::size_t n = group.actions.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lp_new =
        policy.log_prob(group.source, group.actions[i], theta_new);
    const double lp_old =
        group.logp_old.empty()
            ? policy.log_prob(group.source, group.actions[i], theta_old)
            : group.logp_old[i];
    acc += clipped_term(importance_ratio(lp_new, lp_old), group.advantages[i],
                        epsilon);
  }
  return acc / static_cast<double>(n) -
         kl_coeff * kl_divergence(theta_new, theta_ref, group.source, policy);
}

std::vector<double> grpo_gradient(const RolloutGroup& group,
                                  std::span<const double> theta_new,
                                  std::span<const double> theta_old,
                                  std::span<const double> theta_ref,
                                  double epsilon, double kl_coeff,
                                  const policy::PolicyInterface& policy) {
  check_group(group, /*logp_old_required=*/false);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const std::size_t n = group.actions.size();
  const std::size_t dim = policy.param_count();
  std::vector<double> grad(dim, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double lp_new =
        policy.log_prob(group.source, group.actions[i], theta_new);
    const double lp_old =
        group.logp_old.empty()
            ? policy.log_prob(group.source, group.actions[i], theta_old)
            : group.logp_old[i];
    const double ratio = importance_ratio(lp_new, lp_old);
    const double a = group.advantages[i];
    const double unclipped = ratio * a;
    const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon) * a;
    if (unclipped > clipped) continue;  // flat clipped branch selected
    const std::vector<double> g =
        policy.grad_log_prob(group.source, group.actions[i], theta_new);
    const double w = a * ratio / static_cast<double>(n);
    for (std::size_t j = 0; j < dim; ++j) grad[j] += w * g[j];
  }

  if (kl_coeff != 0.0) {
    const std::vector<double> p_new =
        policy.action_probs(group.source, theta_new);
    const std::vector<double> p_ref =
        policy.action_probs(group.source, theta_ref);
    for (std::size_t a = 0; a < p_new.size(); ++a) {
      if (p_new[a] <= 0.0) continue;
      if (p_ref[a] <= 0.0) {
        throw SupportMismatch("reference policy has zero mass on action " +
                              std::to_string(a));
      }
      // d/dtheta of sum_a p'_a (log p'_a - log pref_a) via dp'_a =
      // p'_a * grad log p'_a; the constant 1 term cancels over the sum.
      const double w = 1.0 + std::log(p_new[a]) - std::log(p_ref[a]);
      const std::vector<double> g = policy.grad_log_prob(
          group.source, static_cast<int>(a), theta_new);
      for (std::size_t j = 0; j < dim; ++j) {
        grad[j] -= kl_coeff * p_new[a] * w * g[j];
      }
    }
  }
  return grad;
}

GradCheckReport finite_difference_check(int instances, std::uint64_t seed,
                                        double epsilon, double kl_coeff) {
  if (instances < 1) {
    throw std::invalid_argument("finite_difference_check: instances must be >= 1");
  }
  policy::CategoricalStylePolicy plain_policy;
  policy::CategoricalStylePolicy featured_policy({"difficulty", "poetic"});
  SourceSample plain;
  plain.id = "fd-plain";
  plain.source_text = "probe";
  SourceSample rich = plain;
  rich.id = "fd-rich";
  rich.features = {{"difficulty", 1.1}, {"poetic", -0.4}};

  Rng rng = derive_stream(seed, "gradcheck");
  GradCheckReport report;
  while (report.instances < instances) {
    const bool use_featured = report.instances % 3 == 0;
    const policy::PolicyInterface& policy =
        use_featured ? static_cast<const policy::PolicyInterface&>(featured_policy)
                     : plain_policy;
    const SourceSample& source = use_featured ? rich : plain;
    const std::size_t dim = policy.param_count();

    std::vector<double> theta_old(dim), theta_new(dim), theta_ref(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      theta_old[i] = rng.next_double(-1.5, 1.5);
      theta_new[i] = theta_old[i] + rng.next_double(-0.4, 0.4);
      theta_ref[i] = rng.next_double(-1.5, 1.5);
    }

    RolloutGroup group;
    group.source = source;
    const std::size_t n = 2 + rng.next_below(7);
    for (std::size_t i = 0; i < n; ++i) {
      const int action = static_cast<int>(rng.next_below(kNumStyleActions));
      group.actions.push_back(action);
      group.logp_old.push_back(policy.log_prob(source, action, theta_old));
      rewards::RewardBreakdown b;
      b.r_all = rng.next_double(0.0, 140.0);
      group.rewards.push_back(b);
    }
    fill_advantages(group);

    // The surrogate is non-differentiable where a ratio meets the clip
    // boundary; resample rather than probe across a kink.
    bool near_kink = false;
    for (std::size_t i = 0; i < group.actions.size(); ++i) {
      const double ratio = importance_ratio(
          policy.log_prob(source, group.actions[i], theta_new),
          group.logp_old[i]);
      if (std::abs(ratio - (1.0 - epsilon)) < 1e-3 ||
          std::abs(ratio - (1.0 + epsilon)) < 1e-3) {
        near_kink = true;
        break;
      }
    }
    if (near_kink) continue;

    const std::vector<double> grad = grpo_gradient(
        group, theta_new, theta_old, theta_ref, epsilon, kl_coeff, policy);
    for (std::size_t i = 0; i < dim; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(theta_new[i]));
      const double saved = theta_new[i];
      theta_new[i] = saved + h;
      const double up = grpo_objective(group, theta_new, theta_old, theta_ref,
                                       epsilon, kl_coeff, policy);
      theta_new[i] = saved - h;
      const double down = grpo_objective(group, theta_new, theta_old,
                                         theta_ref, epsilon, kl_coeff, policy);
      theta_new[i] = saved;
      const double fd = (up - down) / (2.0 * h);
      const double rel =
          std::abs(fd - grad[i]) / std::max(1.0, std::abs(grad[i]));
      report.max_relative_error = std::max(report.max_relative_error, rel);
    }
    ++report.instances;
  }
  return report;
}

}  // namespace stylerl::grpo
