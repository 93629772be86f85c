// Command-line front end: workload generation, model training, trace
// simulation and the threshold/batch-size sweep.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bullyguard/engine.hpp"
#include "bullyguard/features.hpp"
#include "bullyguard/logistic.hpp"
#include "bullyguard/scheduler.hpp"
#include "bullyguard/sentiment.hpp"
#include "bullyguard/trace.hpp"
#include "bullyguard/workload.hpp"

namespace {

using namespace bullyguard;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path, const char* what) {
  if (path.empty()) return;
  if (!std::filesystem::exists(path)) {
    throw UsageError(std::string(what) + " not found: " + path);
  }
}

SentimentLexicon load_lexicon_args(const std::string& lexicon_path,
                                   const std::string& negative_words_path) {
  if (lexicon_path.empty() != negative_words_path.empty()) {
    throw UsageError("--lexicon and --negative-words must be given together");
  }
  if (lexicon_path.empty()) return builtin_lexicon();
  require_file(lexicon_path, "lexicon file");
  require_file(negative_words_path, "negative-word file");
  return load_lexicon(lexicon_path, negative_words_path);
}

struct GenArgs {
  WorkloadConfig config;
  std::string out;
};

int run_gen(const GenArgs& args) {
  try {
    args.config.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Trace trace = generate_workload(args.config);
  write_trace(trace, args.out);
  std::size_t sessions = 0;
  for (const TraceEvent& event : trace.events) {
    if (std::holds_alternative<SessionEvent>(event)) ++sessions;
  }
  std::cout << "wrote " << trace.events.size() << " events (" << sessions
            << " sessions) to " << args.out << "\n";
  return 0;
}

struct TrainArgs {
  std::string trace_path;
  std::string lexicon_path;
  std::string negative_words_path;
  std::string out_main;
  std::string out_predictor;
  TrainConfig train_config;
  std::size_t batch_size = 10;
  double min_precision = 0.6;
  double holdout = 0.2;
};

PrecisionRecall example_metrics(const LRModel& model,
                                const std::vector<LabeledExample>& examples) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const LabeledExample& example : examples) {
    bool decided = predict(model, example.features).decision;
    if (decided && example.label) ++tp;
    if (decided && !example.label) ++fp;
    if (!decided && example.label) ++fn;
  }
  PrecisionRecall result;
  result.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  result.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  return result;
}

int run_train(const TrainArgs& args) {
  if (args.out_main.empty() && args.out_predictor.empty()) {
    throw UsageError("nothing to do: give --out-main and/or --out-predictor");
  }
  if (!(args.holdout >= 0.0 && args.holdout < 1.0)) {
    throw UsageError("--holdout must be in [0,1)");
  }
  require_file(args.trace_path, "trace file");
  SentimentLexicon lexicon =
      load_lexicon_args(args.lexicon_path, args.negative_words_path);

  std::vector<MediaSession> sessions =
      materialize_sessions(read_trace(args.trace_path));
  std::vector<MediaSession> training;
  std::vector<MediaSession> holdout;
  const long stride =
      args.holdout > 0.0 ? std::max(2L, std::lround(1.0 / args.holdout)) : 0;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    if (stride > 0 && (i + 1) % static_cast<std::size_t>(stride) == 0) {
      holdout.push_back(std::move(sessions[i]));
    } else {
      training.push_back(std::move(sessions[i]));
    }
  }
  const std::vector<MediaSession>& report_set =
      holdout.empty() ? training : holdout;
  const char* report_name = holdout.empty() ? "training" : "holdout";

  if (!args.out_main.empty()) {
    LRModel main_model =
        train(main_examples(training, lexicon, args.batch_size), args.train_config);
    save_model(main_model, args.out_main);
    PrecisionRecall pr = single_shot_metrics(report_set, main_model, lexicon);
    std::printf("main classifier: %s precision=%.3f recall=%.3f (%zu sessions)\n",
                report_name, pr.precision, pr.recall, report_set.size());
  }
  if (!args.out_predictor.empty()) {
    std::vector<LabeledExample> train_examples = predictor_examples(training, lexicon);
    LRModel predictor_model = train(train_examples, args.train_config);
    predictor_model.decision_threshold =
        tune_predictor(predictor_model, train_examples, args.min_precision);
    save_model(predictor_model, args.out_predictor);
    PrecisionRecall pr =
        example_metrics(predictor_model, predictor_examples(report_set, lexicon));
    std::printf(
        "predictor: %s precision=%.3f recall=%.3f threshold=%.6f (%zu sessions)\n",
        report_name, pr.precision, pr.recall, predictor_model.decision_threshold,
        report_set.size());
  }
  return 0;
}

struct SimulateArgs {
  std::string trace_path;
  std::string predictor_path;
  std::string main_path;
  std::string lexicon_path;
  std::string negative_words_path;
  std::string policy = "dynamic";
  std::string mode = "incremental";
  std::string chunk_mode = "capped";
  double confidence_threshold = 0.2;
  std::size_t batch_size = 10;
  std::size_t alert_threshold = 2;
  std::string metrics_out;
  std::string alerts_out;
};

int run_simulate(const SimulateArgs& args) {
  if (args.batch_size == 0) throw UsageError("--batch-size must be positive");
  if (!(args.confidence_threshold >= 0.0 && args.confidence_threshold <= 1.0)) {
    throw UsageError("--confidence-threshold must be in [0,1]");
  }
  if (args.alert_threshold == 0) throw UsageError("--alert-threshold must be positive");
  require_file(args.trace_path, "trace file");
  require_file(args.predictor_path, "predictor model");
  require_file(args.main_path, "main model");
  SentimentLexicon lexicon =
      load_lexicon_args(args.lexicon_path, args.negative_words_path);

  Models models;
  models.predictor = load_model(args.predictor_path);
  models.main = load_model(args.main_path);
  Trace trace = read_trace(args.trace_path);

  RunConfig config;
  config.policy = policy_from_name(args.policy);
  config.mode = mode_from_name(args.mode);
  config.chunk_mode = chunk_mode_from_name(args.chunk_mode);
  config.confidence_threshold = args.confidence_threshold;
  config.batch_size = args.batch_size;
  config.alert_threshold = args.alert_threshold;

  RunMetrics metrics = run(trace, models, lexicon, config);
  double mean_gain = 1.0;
  if (config.policy != Policy::RoundRobin) {
    RunConfig baseline_config = config;
    baseline_config.policy = Policy::RoundRobin;
    RunMetrics baseline = run(trace, models, lexicon, baseline_config);
    mean_gain = mean_first_alert_gain(baseline, metrics);
  }

  MetricsRow row;
  row.policy = to_string(config.policy);
  row.classifier_mode = to_string(config.mode);
  row.confidence_threshold = config.confidence_threshold;
  row.batch_size = config.batch_size;
  row.sessions = metrics.sessions;
  row.alerts = metrics.alerts;
  row.precision = metrics.precision;
  row.recall = metrics.recall;
  row.mean_gain = mean_gain;
  row.total_ticks = metrics.total_ticks;

  if (args.metrics_out.empty()) {
    std::cout << metrics_csv({row});
  } else {
    write_metrics_csv({row}, args.metrics_out);
  }
  if (!args.alerts_out.empty()) {
    write_alerts(metrics.alert_stream, args.alerts_out);
  }
  return 0;
}

struct SweepArgs {
  std::string trace_path;
  std::string predictor_path;
  std::string main_path;
  std::string lexicon_path;
  std::string negative_words_path;
  std::vector<double> thresholds;
  std::vector<std::size_t> batch_sizes;
  std::string mode = "incremental";
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  if (args.thresholds.empty() || args.batch_sizes.empty()) {
    throw UsageError("sweep needs non-empty --thresholds and --batch-sizes");
  }
  for (double threshold : args.thresholds) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
      throw UsageError("--thresholds entries must be in [0,1]");
    }
  }
  for (std::size_t batch : args.batch_sizes) {
    if (batch == 0) throw UsageError("--batch-sizes entries must be positive");
  }
  require_file(args.trace_path, "trace file");
  require_file(args.predictor_path, "predictor model");
  require_file(args.main_path, "main model");
  SentimentLexicon lexicon =
      load_lexicon_args(args.lexicon_path, args.negative_words_path);

  Models models;
  models.predictor = load_model(args.predictor_path);
  models.main = load_model(args.main_path);
  Trace trace = read_trace(args.trace_path);

  RunConfig base;
  base.mode = mode_from_name(args.mode);
  std::vector<SweepCell> cells = sweep_thresholds(trace, models, lexicon, base,
                                                  args.thresholds, args.batch_sizes);

  std::string csv =
      "confidence_threshold,batch_size,mean_gain,alerts,precision,recall,"
      "dynamic_ticks,baseline_ticks\n";
  char buffer[192];
  for (const SweepCell& cell : cells) {
    std::snprintf(buffer, sizeof(buffer), "%.6g,%zu,%.6g,%zu,%.6g,%.6g,%lld,%lld\n",
                  cell.confidence_threshold, cell.batch_size, cell.mean_gain,
                  cell.alerts, cell.precision, cell.recall,
                  static_cast<long long>(cell.dynamic_ticks),
                  static_cast<long long>(cell.baseline_ticks));
    csv += buffer;
  }
  if (args.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + args.out);
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming cyberbullying detection engine"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "generate a synthetic labeled workload trace");
  gen_cmd->add_option("--sessions", gen_args.config.session_count, "session count");
  gen_cmd->add_option("--bully-fraction", gen_args.config.bully_fraction,
                      "fraction of bullied sessions");
  gen_cmd->add_option("--seed", gen_args.config.rng_seed, "rng seed");
  gen_cmd->add_option("--window", gen_args.config.session_window,
                      "ticks over which sessions are created");
  gen_cmd->add_option("--out", gen_args.out, "output trace JSONL")->required();

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "train the predictor and main classifier from a labeled trace");
  train_cmd->add_option("--trace", train_args.trace_path, "labeled trace JSONL")
      ->required();
  train_cmd->add_option("--lexicon", train_args.lexicon_path, "lexicon TSV");
  train_cmd->add_option("--negative-words", train_args.negative_words_path,
                        "negative-word list");
  train_cmd->add_option("--out-main", train_args.out_main, "main model output");
  train_cmd->add_option("--out-predictor", train_args.out_predictor,
                        "predictor model output");
  train_cmd->add_option("--learning-rate", train_args.train_config.learning_rate,
                        "gradient-descent learning rate");
  train_cmd->add_option("--epochs", train_args.train_config.epochs,
                        "training epochs");
  train_cmd->add_option("--l2", train_args.train_config.l2, "L2 strength");
  train_cmd->add_option("--seed", train_args.train_config.seed, "training seed");
  train_cmd->add_option("--batch-size", train_args.batch_size,
                        "prefix granularity for classifier examples");
  train_cmd->add_option("--min-precision", train_args.min_precision,
                        "precision floor for predictor threshold tuning");
  train_cmd->add_option("--holdout", train_args.holdout,
                        "held-out fraction for reported metrics");

  SimulateArgs sim_args;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "replay a trace through the engine");
  sim_cmd->add_option("--trace", sim_args.trace_path, "trace JSONL")->required();
  sim_cmd->add_option("--predictor-model", sim_args.predictor_path,
                      "predictor model JSON")
      ->required();
  sim_cmd->add_option("--main-model", sim_args.main_path, "main model JSON")
      ->required();
  sim_cmd->add_option("--lexicon", sim_args.lexicon_path, "lexicon TSV");
  sim_cmd->add_option("--negative-words", sim_args.negative_words_path,
                      "negative-word list");
  sim_cmd->add_option("--policy", sim_args.policy, "scheduling policy")
      ->check(CLI::IsMember({"dynamic", "round-robin", "static"}));
  sim_cmd->add_option("--mode", sim_args.mode, "classifier mode")
      ->check(CLI::IsMember({"incremental", "standard"}));
  sim_cmd->add_option("--confidence-threshold", sim_args.confidence_threshold,
                      "priority threshold on mean confidence");
  sim_cmd->add_option("--batch-size", sim_args.batch_size,
                      "comments folded per classification");
  sim_cmd->add_option("--chunk-mode", sim_args.chunk_mode, "batch chunking")
      ->check(CLI::IsMember({"capped", "all"}));
  sim_cmd->add_option("--alert-threshold", sim_args.alert_threshold,
                      "positive decisions needed per alert");
  sim_cmd->add_option("--metrics-out", sim_args.metrics_out,
                      "metrics CSV path (default: stdout)");
  sim_cmd->add_option("--alerts-out", sim_args.alerts_out, "alerts JSONL path");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "gain table over a threshold x batch-size grid");
  sweep_cmd->add_option("--trace", sweep_args.trace_path, "trace JSONL")->required();
  sweep_cmd->add_option("--predictor-model", sweep_args.predictor_path,
                        "predictor model JSON")
      ->required();
  sweep_cmd->add_option("--main-model", sweep_args.main_path, "main model JSON")
      ->required();
  sweep_cmd->add_option("--lexicon", sweep_args.lexicon_path, "lexicon TSV");
  sweep_cmd->add_option("--negative-words", sweep_args.negative_words_path,
                        "negative-word list");
  sweep_cmd->add_option("--thresholds", sweep_args.thresholds, "comma list")
      ->delimiter(',');
  sweep_cmd->add_option("--batch-sizes", sweep_args.batch_sizes, "comma list")
      ->delimiter(',');
  sweep_cmd->add_option("--mode", sweep_args.mode, "classifier mode")
      ->check(CLI::IsMember({"incremental", "standard"}));
  sweep_cmd->add_option("--out", sweep_args.out, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_cmd) return run_gen(gen_args);
    if (*train_cmd) return run_train(train_args);
    if (*sim_cmd) return run_simulate(sim_args);
    if (*sweep_cmd) return run_sweep(sweep_args);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
