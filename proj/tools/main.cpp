// stylerl command line: subcommands wiring a flat JSON config to the
// library. Exit codes: 0 success, 1 runtime failure, 2 config or usage
// error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stylerl/env.hpp"
#include "stylerl/eval.hpp"
#include "stylerl/grpo.hpp"
#include "stylerl/judge/mock.hpp"
#include "stylerl/judge/remote.hpp"
#include "stylerl/policy.hpp"
#include "stylerl/rewards.hpp"
#include "stylerl/rng.hpp"
#include "stylerl/sample.hpp"
#include "stylerl/train.hpp"

namespace {

using nlohmann::json;
using namespace stylerl;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every key the flat config schema accepts, across all subcommands.
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      // shared
      "seed", "out_dir",
      // synthetic world / dataset
      "n_sources", "classical_bias", "world_seed", "dataset_jsonl",
      // cold start
      "behavior_jsonl", "coldstart_free_fraction", "mle_learning_rate",
      "mle_steps", "mle_smoothing",
      // training
      "n_rollouts", "batch_size", "learning_rate", "epsilon_clip", "kl_coeff",
      "alpha", "rollout_temperature", "epochs", "variant", "lp_offset",
      "lp_scale", "short_penalty_k", "max_steps", "init_checkpoint", "judge",
      // remote judge endpoint
      "base_url", "model_name", "api_key", "max_retries", "backoff_initial_ms",
      "max_in_flight", "request_timeout_ms",
      // evaluation
      "eval_jsonl", "ballots_csv", "runs_json", "metric", "subset_size",
      // one-shot judging
      "source_id", "generation_file",
      // gradient check
      "gradcheck_tolerance", "gradcheck_instances"};
  return keys;
}

struct Resolved {
  json cfg = json::object();
  std::string config_path;  // empty when no --config was given

  bool has(const std::string& key) const { return cfg.contains(key); }

  template <typename T>
  T get(const std::string& key, T fallback) const {
    if (!cfg.contains(key)) return fallback;
    try {
      return cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw UsageError("config: key '" + key + "' has the wrong type");
    }
  }

  std::string require_str(const std::string& key) const {
    if (!cfg.contains(key)) {
      throw UsageError("config: missing required key '" + key + "'");
    }
    return get<std::string>(key, "");
  }
};

Resolved load_config(const std::string& path) {
  Resolved r;
  if (!path.empty()) {
    r.config_path = path;
    json parsed;
    try {
      parsed = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
      throw UsageError("config: " + path + " is not valid JSON: " + e.what());
    }
    if (!parsed.is_object()) {
      throw UsageError("config: " + path + " must hold a JSON object");
    }
    for (const auto& [key, value] : parsed.items()) {
      if (known_keys().count(key) == 0) {
        throw UsageError("config: unknown key '" + key + "'");
      }
      r.cfg[key] = value;
    }
  }
  return r;
}

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Hash of the fully-resolved configuration (defaults filled in, flags
// applied). Recorded in the manifest before any work starts so a finished
// artifact can always be traced back to the exact settings that made it.
std::string config_hash(const json& resolved) {
  const std::uint64_t h = fnv1a64(resolved.dump());
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// The manifest is written twice: once with status "running" before work
// begins, once with the final status and output paths. Timestamps make the
// manifest the one output outside the byte-determinism contract.
class Manifest {
 public:
  Manifest(std::string command, const Resolved& r, const json& resolved_cfg,
           std::uint64_t seed, std::string out_dir)
      : path_(out_dir + "/manifest.json") {
    body_["command"] = std::move(command);
    body_["config_path"] = r.config_path;
    body_["config_hash"] = config_hash(resolved_cfg);
    body_["seed"] = seed;
    body_["out_dir"] = out_dir;
    body_["started_at"] = iso_timestamp();
    body_["status"] = "running";
    std::filesystem::create_directories(out_dir);
    flush();
  }

  void add_output(const std::string& name, const std::string& path) {
    body_["outputs"][name] = path;
  }

  void finish_ok() {
    body_["status"] = "ok";
    body_["finished_at"] = iso_timestamp();
    flush();
  }

  void finish_failed(const std::string& why) {
    body_["status"] = "failed";
    body_["error"] = why;
    body_["finished_at"] = iso_timestamp();
    flush();
  }

 private:
  void flush() const {
    write_text_file(path_, body_.dump(2) + "\n");
  }

  std::string path_;
  json body_;
};

std::string require_out_dir(const Resolved& r) {
  const std::string out = r.get<std::string>("out_dir", "");
  if (out.empty()) {
    throw UsageError("config: an output directory is required (--out or out_dir)");
  }
  return out;
}

env::StyleWorldConfig world_config(const Resolved& r, std::uint64_t seed) {
  env::StyleWorldConfig w;
  w.n_sources = r.get<int>("n_sources", w.n_sources);
  w.classical_bias = r.get<double>("classical_bias", w.classical_bias);
  w.seed = r.get<std::uint64_t>("world_seed", seed);
  return w;
}

// Sources come from dataset_jsonl when given, otherwise from the synthetic
// world. Both paths are deterministic in the config.
std::vector<SourceSample> load_sources(const Resolved& r, std::uint64_t seed) {
  const std::string path = r.get<std::string>("dataset_jsonl", "");
  if (!path.empty()) return load_dataset_jsonl(path);
  return env::generate_sources(world_config(r, seed));
}

std::string dataset_id(const Resolved& r) {
  const std::string path = r.get<std::string>("dataset_jsonl", "");
  if (path.empty()) return "styleworld";
  return std::filesystem::path(path).filename().string();
}

rewards::RewardVariant parse_variant(const std::string& name) {
  const auto v = rewards::variant_from_name(name);
  if (!v) throw UsageError("config: unknown reward variant '" + name + "'");
  return *v;
}

judge::JudgeEndpointConfig endpoint_config(const Resolved& r, ScaleKind scale) {
  judge::JudgeEndpointConfig e;
  e.base_url = r.require_str("base_url");
  e.model_name = r.require_str("model_name");
  e.api_key = r.get<std::string>("api_key", "");
  e.max_retries = r.get<int>("max_retries", e.max_retries);
  e.backoff_initial_ms = r.get<int>("backoff_initial_ms", e.backoff_initial_ms);
  e.max_in_flight = r.get<int>("max_in_flight", e.max_in_flight);
  e.request_timeout_ms = r.get<int>("request_timeout_ms", e.request_timeout_ms);
  e.scale = scale;
  return e;
}

std::unique_ptr<judge::Judge> make_judge(const Resolved& r, ScaleKind scale) {
  const std::string kind = r.get<std::string>("judge", "mock");
  if (kind == "mock") {
    judge::MockJudgeConfig m;
    m.scale = scale;
    m.classical_bias = r.get<double>("classical_bias", m.classical_bias);
    return std::make_unique<judge::MockJudge>(m);
  }
  if (kind == "remote") {
    return std::make_unique<judge::RemoteJudge>(endpoint_config(r, scale));
  }
  throw UsageError("config: judge must be 'mock' or 'remote', got '" + kind +
                   "'");
}

train::TrainingConfig training_config(const Resolved& r, std::uint64_t seed) {
  train::TrainingConfig t;
  t.seed = seed;
  t.n_rollouts = r.get<int>("n_rollouts", t.n_rollouts);
  t.batch_size = r.get<int>("batch_size", t.batch_size);
  t.learning_rate = r.get<double>("learning_rate", t.learning_rate);
  t.epsilon_clip = r.get<double>("epsilon_clip", t.epsilon_clip);
  t.kl_coeff = r.get<double>("kl_coeff", t.kl_coeff);
  t.rollout_temperature =
      r.get<double>("rollout_temperature", t.rollout_temperature);
  t.epochs = r.get<int>("epochs", t.epochs);
  t.max_steps = r.get<int>("max_steps", t.max_steps);
  t.reward_variant = parse_variant(r.get<std::string>("variant", "standard"));
  // alpha follows the variant's default scale unless the config pins it.
  t.alpha = r.has("alpha")
                ? r.get<double>("alpha", 0.0)
                : rewards::default_variant_config(t.reward_variant).alpha;
  t.lp_offset = r.get<double>("lp_offset", t.lp_offset);
  t.lp_scale = r.get<double>("lp_scale", t.lp_scale);
  t.short_penalty_k = r.get<int>("short_penalty_k", t.short_penalty_k);
  return t;
}

// The resolved-config snapshot that gets hashed into the manifest: the
// merged key set plus the command and seed actually in effect.
json resolved_snapshot(const std::string& command, const Resolved& r,
                       std::uint64_t seed) {
  json out = r.cfg;
  out["command"] = command;
  out["seed"] = seed;
  return out;
}

std::string true_quality_jsonl(const std::vector<env::TrueQualityRecord>& recs) {
  std::string out;
  for (const auto& rec : recs) {
    json line;
    line["step"] = rec.step;
    line["mean_true_quality"] = rec.mean_true_quality;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string step_reports_jsonl(const std::vector<grpo::GrpoStepReport>& reps) {
  std::string out;
  for (const auto& rep : reps) {
    json line;
    line["step"] = rep.step;
    line["objective_value"] = rep.objective_value;
    line["mean_ratio"] = rep.mean_ratio;
    line["clip_fraction"] = rep.clip_fraction;
    line["kl_value"] = rep.kl_value;
    line["grad_norm"] = rep.grad_norm;
    out += line.dump();
    out += '\n';
  }
  return out;
}

json runs_to_json(const std::vector<eval::EvalRun>& runs) {
  json out = json::array();
  for (const auto& run : runs) {
    json scores = json::array();
    for (const auto& s : run.per_sample_scores) {
      scores.push_back({{"sample_id", s.sample_id},
                        {"metric", s.metric},
                        {"value", s.value}});
    }
    out.push_back({{"system", run.system_name},
                   {"dataset", run.dataset_id},
                   {"subset_seed", run.subset_seed},
                   {"scores", std::move(scores)}});
  }
  return out;
}

std::vector<eval::EvalRun> runs_from_json(const json& doc) {
  if (!doc.is_array()) {
    throw DatasetError("runs file: top level must be a JSON array");
  }
  std::vector<eval::EvalRun> runs;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("system") ||
        !item.contains("scores")) {
      throw DatasetError("runs file: each run needs 'system' and 'scores'");
    }
    eval::EvalRun run;
    run.system_name = item.at("system").get<std::string>();
    run.dataset_id = item.value("dataset", std::string{});
    run.subset_seed = item.value("subset_seed", std::uint64_t{0});
    for (const auto& s : item.at("scores")) {
      run.per_sample_scores.push_back({s.at("sample_id").get<std::string>(),
                                       s.at("metric").get<std::string>(),
                                       s.at("value").get<double>()});
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

// --- subcommands ---

int cmd_coldstart(const Resolved& r) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const std::string out_dir = require_out_dir(r);
  Manifest manifest("coldstart", r, resolved_snapshot("coldstart", r, seed),
                    seed, out_dir);
  try {
    const auto dataset = load_sources(r, seed);
    std::vector<policy::BehaviorRecord> records;
    const std::string behavior_path = r.get<std::string>("behavior_jsonl", "");
    if (!behavior_path.empty()) {
      records = policy::load_behavior_jsonl(behavior_path);
    } else {
      records = env::coldstart_behavior(
          dataset, r.get<double>("coldstart_free_fraction", 0.1));
    }
    const auto examples = policy::make_behavior_examples(records, dataset);

    policy::MleOptions opts;
    opts.learning_rate = r.get<double>("mle_learning_rate", opts.learning_rate);
    opts.steps = r.get<int>("mle_steps", opts.steps);
    opts.smoothing = r.get<double>("mle_smoothing", opts.smoothing);
    const policy::CategoricalStylePolicy policy;
    const auto theta = policy::mle_fit(policy, examples, opts);

    train::Checkpoint ckpt;
    ckpt.theta = theta;
    ckpt.theta_ref = theta;
    ckpt.seed = seed;
    const std::string ckpt_path = out_dir + "/coldstart.json";
    train::save_checkpoint(ckpt_path, ckpt);
    manifest.add_output("coldstart_checkpoint", ckpt_path);

    const std::string data_path = out_dir + "/dataset.jsonl";
    save_dataset_jsonl(data_path, dataset);
    manifest.add_output("dataset", data_path);

    manifest.finish_ok();
    std::cout << "coldstart: fitted " << theta.size() << " parameters on "
              << examples.size() << " behavior examples -> " << ckpt_path
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_failed(e.what());
    throw;
  }
}

int cmd_train(const Resolved& r, const std::string& resume_path) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const std::string out_dir = require_out_dir(r);
  const train::TrainingConfig tcfg = training_config(r, seed);
  train::validate_config(tcfg);

  Manifest manifest("train", r, resolved_snapshot("train", r, seed), seed,
                    out_dir);
  try {
    const auto dataset = load_sources(r, seed);
    const policy::TemplateSequencePolicy policy{
        policy::CategoricalStylePolicy{}};
    const auto judge =
        make_judge(r, rewards::variant_scale(tcfg.reward_variant));

    std::optional<train::Checkpoint> resume;
    std::vector<double> theta_init(policy.param_count(), 0.0);
    std::vector<double> theta_ref(policy.param_count(), 0.0);
    if (!resume_path.empty()) {
      resume = train::load_checkpoint(resume_path);
    } else {
      const std::string init_path = r.get<std::string>("init_checkpoint", "");
      if (!init_path.empty()) {
        const auto init = train::load_checkpoint(init_path);
        theta_init = init.theta;
        theta_ref = init.theta;  // the cold-start snapshot anchors the KL
      }
    }

    const auto result =
        train::train(tcfg, dataset, policy, *judge, theta_init, theta_ref,
                     resume ? &*resume : nullptr);

    const std::string metrics_path = out_dir + "/metrics.jsonl";
    train::save_metrics_jsonl(metrics_path, result.metrics);
    manifest.add_output("metrics", metrics_path);

    const std::string ckpt_path = out_dir + "/checkpoint.json";
    train::save_checkpoint(ckpt_path, result.checkpoint);
    manifest.add_output("checkpoint", ckpt_path);

    const std::string tq_path = out_dir + "/true_quality.jsonl";
    write_text_file(tq_path, true_quality_jsonl(result.true_quality));
    manifest.add_output("true_quality", tq_path);

    const std::string steps_path = out_dir + "/steps.jsonl";
    write_text_file(steps_path,
                            step_reports_jsonl(result.step_reports));
    manifest.add_output("steps", steps_path);

    if (result.aborted_by_judge) {
      manifest.finish_failed("judge unavailable: " + result.abort_reason);
      std::cerr << "train: aborted by judge (" << result.abort_reason
                << "); resume from " << ckpt_path << "\n";
      return 1;
    }
    manifest.finish_ok();
    std::cout << "train: " << result.checkpoint.step << " steps -> "
              << metrics_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_failed(e.what());
    throw;
  }
}

int cmd_eval(const Resolved& r) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const std::string out_dir = require_out_dir(r);
  Manifest manifest("eval", r, resolved_snapshot("eval", r, seed), seed,
                    out_dir);
  try {
    const auto dataset = load_sources(r, seed);
    const auto subset_size = r.get<std::size_t>("subset_size", 0);
    const auto subset = subset_size > 0
                            ? eval::sample_subset(dataset, subset_size, seed)
                            : dataset;

    const auto entries = eval::load_eval_jsonl(r.require_str("eval_jsonl"));
    std::set<std::string> all_ids;
    for (const auto& s : dataset) all_ids.insert(s.id);
    std::set<std::string> subset_ids;
    for (const auto& s : subset) subset_ids.insert(s.id);
    std::vector<eval::TranslationEntry> kept;
    std::set<std::string> systems;
    for (const auto& e : entries) {
      if (all_ids.count(e.sample_id) == 0) {
        throw DatasetError("eval: sample id '" + e.sample_id +
                           "' is not in the dataset");
      }
      if (subset_ids.count(e.sample_id) == 0) continue;
      kept.push_back(e);
      systems.insert(e.system);
    }

    const std::string metric = r.get<std::string>("metric", "GEA100");
    ScaleKind scale = ScaleKind::points100;
    if (metric == "GEA5") scale = ScaleKind::points5;
    if (metric == "GEA3") scale = ScaleKind::points3;
    const auto judge = make_judge(r, scale);

    std::vector<eval::EvalRun> runs;
    for (const auto& system : systems) {
      auto run = eval::score_translations(kept, subset, *judge, system,
                                          dataset_id(r), metric);
      run.subset_seed = subset_size > 0 ? seed : 0;
      runs.push_back(std::move(run));
    }

    const std::string runs_path = out_dir + "/eval_runs.json";
    write_text_file(runs_path, runs_to_json(runs).dump(2) + "\n");
    manifest.add_output("runs", runs_path);

    std::vector<eval::BestWorstBallot> ballots;
    const std::string ballots_path = r.get<std::string>("ballots_csv", "");
    if (!ballots_path.empty()) ballots = eval::load_ballots_csv(ballots_path);

    const auto report = eval::build_report(runs, ballots);
    const std::string csv_path = out_dir + "/report.csv";
    write_text_file(csv_path, report.csv);
    manifest.add_output("report_csv", csv_path);
    const std::string txt_path = out_dir + "/report.txt";
    write_text_file(txt_path, report.summary);
    manifest.add_output("report_txt", txt_path);

    manifest.finish_ok();
    std::cout << "eval: scored " << kept.size() << " entries across "
              << systems.size() << " systems -> " << csv_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_failed(e.what());
    throw;
  }
}

// One-shot scoring of a single (source, generation text) pair; prints the
// reward breakdown as JSON and writes nothing.
int cmd_judge(const Resolved& r) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const std::string source_id = r.require_str("source_id");
  const std::string gen_path = r.require_str("generation_file");

  const auto dataset = load_sources(r, seed);
  const SourceSample* source = nullptr;
  for (const auto& s : dataset) {
    if (s.id == source_id) {
      source = &s;
      break;
    }
  }
  if (source == nullptr) {
    throw UsageError("judge: source id '" + source_id +
                     "' is not in the dataset");
  }

  const auto variant = parse_variant(r.get<std::string>("variant", "standard"));
  rewards::RewardVariantConfig rcfg = rewards::default_variant_config(variant);
  if (r.has("alpha")) rcfg.alpha = r.get<double>("alpha", rcfg.alpha);
  rcfg.lp_offset = r.get<double>("lp_offset", rcfg.lp_offset);
  rcfg.lp_scale = r.get<double>("lp_scale", rcfg.lp_scale);
  rcfg.short_penalty_k = r.get<int>("short_penalty_k", rcfg.short_penalty_k);

  const auto judge = make_judge(r, rewards::variant_scale(variant));
  const auto parsed = parse_generation(read_text_file(gen_path));
  const auto fmt = judge->judge_format(*source, parsed);
  const auto thought = judge->judge_thought(*source, parsed);
  const auto trans = judge->judge_translation(*source, parsed);
  const auto breakdown =
      rewards::compose_reward(parsed, fmt, thought, trans, rcfg);

  json out;
  out["r_format"] = breakdown.r_format;
  out["r_thought"] = breakdown.r_thought;
  out["r_trans"] = breakdown.r_trans;
  out["r_all"] = breakdown.r_all;
  out["thought_tokens"] = breakdown.thought_tokens;
  out["variant"] = std::string(rewards::variant_name(breakdown.variant_tag));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_gradcheck(const Resolved& r) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const int instances = r.get<int>("gradcheck_instances", 100);
  const double tolerance = r.get<double>("gradcheck_tolerance", 1e-5);
  const auto report = grpo::finite_difference_check(instances, seed);
  const bool ok = report.max_relative_error < tolerance;
  std::printf("gradcheck: %d instances, max relative error %.3e, tolerance %.3e: %s\n",
              report.instances, report.max_relative_error, tolerance,
              ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_report(const Resolved& r) {
  const auto seed = r.get<std::uint64_t>("seed", 1);
  const std::string out_dir = require_out_dir(r);
  Manifest manifest("report", r, resolved_snapshot("report", r, seed), seed,
                    out_dir);
  try {
    json doc;
    const std::string runs_path = r.require_str("runs_json");
    try {
      doc = json::parse(read_text_file(runs_path));
    } catch (const json::exception& e) {
      throw DatasetError("runs file: not valid JSON: " + std::string(e.what()));
    }
    const auto runs = runs_from_json(doc);

    std::vector<eval::BestWorstBallot> ballots;
    const std::string ballots_path = r.get<std::string>("ballots_csv", "");
    if (!ballots_path.empty()) ballots = eval::load_ballots_csv(ballots_path);

    const auto report = eval::build_report(runs, ballots);
    const std::string csv_path = out_dir + "/report.csv";
    write_text_file(csv_path, report.csv);
    manifest.add_output("report_csv", csv_path);
    const std::string txt_path = out_dir + "/report.txt";
    write_text_file(txt_path, report.summary);
    manifest.add_output("report_txt", txt_path);

    manifest.finish_ok();
    std::cout << "report: " << runs.size() << " runs, " << ballots.size()
              << " ballots -> " << csv_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_failed(e.what());
    throw;
  }
}

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string judge_kind;
  std::string variant;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
};

void add_common_flags(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--config", flags.config_path, "JSON config file");
  cmd.add_option("--seed", flags.seed, "Override the seed");
  cmd.add_option("--out", flags.out_dir, "Output directory");
  cmd.add_option("--judge", flags.judge_kind, "Judge backend: mock or remote");
  cmd.add_option("--variant", flags.variant, "Reward variant name");
  cmd.add_option("--epochs", flags.epochs, "Override the epoch count");
}

Resolved resolve(const CommonFlags& flags) {
  Resolved r = load_config(flags.config_path);
  if (flags.seed) r.cfg["seed"] = *flags.seed;
  if (!flags.out_dir.empty()) r.cfg["out_dir"] = flags.out_dir;
  if (!flags.judge_kind.empty()) r.cfg["judge"] = flags.judge_kind;
  if (!flags.variant.empty()) r.cfg["variant"] = flags.variant;
  if (flags.epochs) r.cfg["epochs"] = *flags.epochs;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylerl: GRPO training with judge-derived rewards"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string resume_path;
  std::string source_id;
  std::string generation_file;

  CLI::App* coldstart = app.add_subcommand(
      "coldstart", "Fit the cold-start policy and write its checkpoint");
  add_common_flags(*coldstart, flags);

  CLI::App* train_cmd =
      app.add_subcommand("train", "Run GRPO training on the configured world");
  add_common_flags(*train_cmd, flags);
  train_cmd->add_option("--resume", resume_path,
                        "Resume from a training checkpoint");

  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Judge translation files and write an evaluation report");
  add_common_flags(*eval_cmd, flags);

  CLI::App* judge_cmd = app.add_subcommand(
      "judge", "Score one generation file against one source");
  add_common_flags(*judge_cmd, flags);
  judge_cmd->add_option("--source-id", source_id, "Sample id to judge against");
  judge_cmd->add_option("--generation-file", generation_file,
                        "File holding the raw generation text");

  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Compare analytic gradients against finite differences");
  add_common_flags(*gradcheck, flags);

  CLI::App* report = app.add_subcommand(
      "report", "Build a report from stored evaluation runs");
  add_common_flags(*report, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Resolved r = resolve(flags);
    if (!source_id.empty()) r.cfg["source_id"] = source_id;
    if (!generation_file.empty()) r.cfg["generation_file"] = generation_file;

    if (coldstart->parsed()) return cmd_coldstart(r);
    if (train_cmd->parsed()) return cmd_train(r, resume_path);
    if (eval_cmd->parsed()) return cmd_eval(r);
    if (judge_cmd->parsed()) return cmd_judge(r);
    if (gradcheck->parsed()) return cmd_gradcheck(r);
    if (report->parsed()) return cmd_report(r);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DatasetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const eval::SubsetTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
