#include "stylerl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace stylerl::policy {

using nlohmann::json;

namespace {

// Exactly kLowEffortTokens words.
constexpr std::string_view kLowThought =
    "Read the source once and translate it directly.";

// Exactly kHighEffortTokens words.
constexpr std::string_view kHighThought =
    "First read the source closely and note its images, register, and rhythm. "
    "Consider a literal rendering and list what it preserves and what it "
    "loses. Consider a freer rendering and weigh its fluency against its "
    "fidelity. Compare both drafts against the tone of the original, then "
    "choose the wording that keeps meaning, sound, and style in balance. "
    "Proofread the result.";

// Thoughts at or above this many tokens read back as high effort.
constexpr int kEffortTokenThreshold = 30;

double logsumexp(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

}  // namespace

CategoricalStylePolicy::CategoricalStylePolicy(
    std::vector<std::string> feature_names)
    : feature_names_(std::move(feature_names)) {}

std::size_t CategoricalStylePolicy::param_count() const {
  return static_cast<std::size_t>(kNumStyleActions) * (1 + feature_names_.size());
}

void CategoricalStylePolicy::check_theta(std::span<const double> theta) const {
  if (theta.size() != param_count()) {
    throw std::invalid_argument(
        "parameter vector has " + std::to_string(theta.size()) +
        " entries, policy expects " + std::to_string(param_count()));
  }
}

std::vector<double> CategoricalStylePolicy::logits(
    const SourceSample& sample, std::span<const double> theta) const {
  check_theta(theta);
  const std::size_t f_count = feature_names_.size();
  std::vector<double> out(kNumStyleActions);
  for (int a = 0; a < kNumStyleActions; ++a) {
    double z = theta[static_cast<std::size_t>(a)];
    for (std::size_t f = 0; f < f_count; ++f) {
      const auto it = sample.features.find(feature_names_[f]);
      if (it == sample.features.end()) continue;
      z += theta[kNumStyleActions + static_cast<std::size_t>(a) * f_count + f] *
           it->second;
    }
    out[static_cast<std::size_t>(a)] = z;
  }
  return out;
}

std::vector<double> CategoricalStylePolicy::action_probs(
    const SourceSample& sample, std::span<const double> theta,
    double temperature) const {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be positive");
  }
  std::vector<double> z = logits(sample, theta);
  for (double& v : z) v /= temperature;
  const double lse = logsumexp(z);
  for (double& v : z) v = std::exp(v - lse);
  return z;
}

double CategoricalStylePolicy::log_prob(const SourceSample& sample, int action,
                                        std::span<const double> theta) const {
  if (action < 0 || action >= kNumStyleActions) {
    throw std::invalid_argument("action id out of range: " +
                                std::to_string(action));
  }
  const std::vector<double> z = logits(sample, theta);
  return z[static_cast<std::size_t>(action)] - logsumexp(z);
}

std::vector<double> CategoricalStylePolicy::grad_log_prob(
    const SourceSample& sample, int action,
    std::span<const double> theta) const {
  if (action < 0 || action >= kNumStyleActions) {
    throw std::invalid_argument("action id out of range: " +
                                std::to_string(action));
  }
  const std::vector<double> p = action_probs(sample, theta);
  const std::size_t f_count = feature_names_.size();
  std::vector<double> grad(param_count(), 0.0);
  for (int j = 0; j < kNumStyleActions; ++j) {
    const double indicator = (j == action) ? 1.0 : 0.0;
    const double base = indicator - p[static_cast<std::size_t>(j)];
    grad[static_cast<std::size_t>(j)] = base;
    for (std::size_t f = 0; f < f_count; ++f) {
      const auto it = sample.features.find(feature_names_[f]);
      if (it == sample.features.end()) continue;
      grad[kNumStyleActions + static_cast<std::size_t>(j) * f_count + f] =
          base * it->second;
    }
  }
  return grad;
}

int CategoricalStylePolicy::sample_action(const SourceSample& sample,
                                          double temperature,
                                          std::span<const double> theta,
                                          Rng& rng) const {
  const std::vector<double> p = action_probs(sample, theta, temperature);
  return static_cast<int>(rng.categorical(p));
}

TemplateSequencePolicy::TemplateSequencePolicy(CategoricalStylePolicy inner)
    : inner_(std::move(inner)) {}

std::string_view TemplateSequencePolicy::thought_text(Effort e) {
  return e == Effort::low ? kLowThought : kHighThought;
}

std::string TemplateSequencePolicy::translation_text(Style s) {
  std::string out = "[";
  out += style_name(s);
  out += "] ";
  switch (s) {
    case Style::literal:
      out += "the source rendered word by word without ornament";
      break;
    case Style::free:
      out += "a natural reading shaped for the target audience";
      break;
    case Style::classical:
      out += "an ornate rendering in a classical literary register";
      break;
  }
  return out;
}

std::string TemplateSequencePolicy::render(const SourceSample&,
                                           int action) const {
  const StyleAction a = action_from_id(action);
  std::string out;
  out += kThinkOpenTag;
  out += thought_text(a.effort);
  out += kThinkCloseTag;
  out += '\n';
  out += translation_text(a.style);
  return out;
}

std::optional<StyleAction> TemplateSequencePolicy::recover(
    const ParsedGeneration& parsed) {
  if (!parsed.structure_ok) return std::nullopt;
  std::optional<Style> style;
  for (Style s : {Style::literal, Style::free, Style::classical}) {
    std::string marker = "[";
    marker += style_name(s);
    marker += "]";
    if (parsed.translation.starts_with(marker)) {
      style = s;
      break;
    }
  }
  if (!style) return std::nullopt;
  const int tokens = count_thought_tokens(parsed.thought);
  const Effort effort =
      tokens >= kEffortTokenThreshold ? Effort::high : Effort::low;
  return StyleAction{*style, effort};
}

std::vector<BehaviorRecord> parse_behavior_jsonl(std::string_view text) {
  std::vector<BehaviorRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.empty()) continue;

    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DatasetError("behavior line " + std::to_string(line_no) +
                         ": not a JSON object");
    }
    BehaviorRecord r;
    r.source_id = j.value("source_id", std::string{});
    if (r.source_id.empty()) {
      throw DatasetError("behavior line " + std::to_string(line_no) +
                         ": empty source_id");
    }
    const auto style = style_from_name(j.value("style", std::string{}));
    if (!style) {
      throw DatasetError("behavior line " + std::to_string(line_no) +
                         ": unknown style");
    }
    const auto effort = effort_from_name(j.value("effort", std::string{}));
    if (!effort) {
      throw DatasetError("behavior line " + std::to_string(line_no) +
                         ": unknown effort");
    }
    r.action = StyleAction{*style, *effort};
    records.push_back(std::move(r));
  }
  return records;
}

std::string to_behavior_jsonl(const std::vector<BehaviorRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["source_id"] = r.source_id;
    j["style"] = std::string(style_name(r.action.style));
    j["effort"] = std::string(effort_name(r.action.effort));
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<BehaviorRecord> load_behavior_jsonl(const std::string& path) {
  return parse_behavior_jsonl(read_text_file(path));
}

void save_behavior_jsonl(const std::string& path,
                         const std::vector<BehaviorRecord>& records) {
  write_text_file(path, to_behavior_jsonl(records));
}

std::vector<BehaviorExample> make_behavior_examples(
    const std::vector<BehaviorRecord>& records,
    const std::vector<SourceSample>& dataset) {
  std::unordered_map<std::string_view, const SourceSample*> by_id;
  for (const auto& s : dataset) by_id.emplace(s.id, &s);
  std::vector<BehaviorExample> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    const auto it = by_id.find(r.source_id);
    if (it == by_id.end()) {
      throw DatasetError("behavior record references unknown source id '" +
                         r.source_id + "'");
    }
    out.push_back(BehaviorExample{*it->second, action_id(r.action)});
  }
  return out;
}

std::vector<double> mle_fit(const PolicyInterface& policy,
                            const std::vector<BehaviorExample>& data,
                            const MleOptions& options) {
  if (data.empty()) throw std::invalid_argument("mle_fit: empty dataset");
  if (!(options.learning_rate > 0.0)) {
    throw std::invalid_argument("mle_fit: learning_rate must be positive");
  }
  if (options.smoothing < 0.0 || options.smoothing >= 1.0) {
    throw std::invalid_argument("mle_fit: smoothing must lie in [0, 1)");
  }
  const std::size_t dim = policy.param_count();
  std::vector<double> theta(dim, 0.0);
  std::vector<double> grad(dim);
  const double s = options.smoothing;
  for (int step = 0; step < options.steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& ex : data) {
      const std::vector<double> g_obs =
          policy.grad_log_prob(ex.sample, ex.action_id, theta);
      for (std::size_t i = 0; i < dim; ++i) grad[i] += (1.0 - s) * g_obs[i];
      if (s > 0.0) {
        const int k = policy.num_actions(ex.sample);
        for (int a = 0; a < k; ++a) {
          const std::vector<double> g_a =
              policy.grad_log_prob(ex.sample, a, theta);
          for (std::size_t i = 0; i < dim; ++i) grad[i] += (s / k) * g_a[i];
        }
      }
    }
    const double scale = options.learning_rate / static_cast<double>(data.size());
    for (std::size_t i = 0; i < dim; ++i) theta[i] += scale * grad[i];
  }
  return theta;
}

}  // namespace stylerl::policy
