// Release acceptance suite. Each criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero when any criterion fails. Workload seeds are
// fixed, so every run is a replay.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bullyguard/alerts.hpp"
#include "bullyguard/engine.hpp"
#include "bullyguard/features.hpp"
#include "bullyguard/logistic.hpp"
#include "bullyguard/rng.hpp"
#include "bullyguard/scheduler.hpp"
#include "bullyguard/sentiment.hpp"
#include "bullyguard/workload.hpp"

#include "helpers.hpp"

using namespace bullyguard;
using testutil::TempDir;
using testutil::profile;
using testutil::read_file;
using testutil::session;
using testutil::trained_models;

namespace {

struct Criterion {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

std::string format(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buffer[512];
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

const char* const kCommentPool[] = {
    "you are such an idiot",       "great video love it",
    "this is so dumb and ugly",    "wow awesome work",
    "pathetic loser go away",      "really cool stream today",
    "worthless trash account",     "nice one congrats",
    "what a clown you are",        "first time here very fun",
    "stupid stupid stupid",        "beautiful photo",
};

std::string pool_text(std::size_t index) {
  return kCommentPool[index % (sizeof(kCommentPool) / sizeof(kCommentPool[0]))];
}

// ---------------------------------------------------------------- C1 ----

Criterion c1_incremental_equivalence() {
  Criterion c;
  c.name = "C1 incremental extraction and inference match batch recomputation";
  const SentimentLexicon& lexicon = builtin_lexicon();
  const LRModel& model = trained_models().main;
  std::mt19937_64 rng(1001);

  double max_feature_diff = 0.0;
  double max_confidence_diff = 0.0;
  std::size_t folds = 0;

  for (int i = 0; i < 100; ++i) {
    const std::size_t comments = static_cast<std::size_t>(uniform_int(rng, 1, 1000));
    MediaSession s = session("c1", profile(uniform_int(rng, 0, 9000),
                                           uniform_int(rng, 0, 3000),
                                           uniform_int(rng, 0, 500)),
                             pool_text(static_cast<std::size_t>(i)), 0);
    for (std::size_t k = 0; k < comments; ++k) {
      s.comments.push_back(Comment{static_cast<Tick>(k + 1),
                                   pool_text(k * 7 + static_cast<std::size_t>(i))});
    }

    ensure_cached_features(s, lexicon);
    std::span<const Comment> all(s.comments);
    while (s.processed_count < s.comments.size()) {
      const std::size_t remaining = s.comments.size() - s.processed_count;
      const std::size_t step = static_cast<std::size_t>(uniform_int(
          rng, 1, static_cast<std::int64_t>(std::min<std::size_t>(remaining, 50))));
      AdditiveDelta delta = extract_delta(all.subspan(s.processed_count, step), lexicon);
      const FeatureVector& folded = fold_delta(s, delta, step);
      ++folds;

      FeatureVector recomputed = extract_batch(s, s.processed_count, lexicon);
      for (Eigen::Index j = 0; j < folded.values.size(); ++j) {
        max_feature_diff = std::max(max_feature_diff,
                                    std::abs(folded.values[j] - recomputed.values[j]));
      }

      Classification incremental = predict_incremental(model, s, folded);
      Classification standard = predict(model, folded);
      max_confidence_diff = std::max(
          max_confidence_diff, std::abs(incremental.confidence - standard.confidence));
      if (incremental.decision != standard.decision) {
        c.detail = "decision diverged between inference paths";
        return c;
      }
    }
  }

  c.passed = max_feature_diff <= 1e-9 && max_confidence_diff <= 1e-12;
  c.detail = format("100 sessions, %zu folds, max feature diff %.3g, "
                    "max confidence diff %.3g",
                    folds, max_feature_diff, max_confidence_diff);
  return c;
}

// ---------------------------------------------------------------- C2 ----

Criterion c2_speedup_scaling() {
  Criterion c;
  c.name = "C2 incremental classification cost stays flat while batch grows";
  const SentimentLexicon& lexicon = builtin_lexicon();
  const LRModel& model = trained_models().main;

  constexpr std::size_t kSessions = 5000;
  constexpr std::size_t kInvocations = 50;
  constexpr std::size_t kBatch = 10;

  std::vector<std::uint64_t> incremental_ns(kInvocations, 0);
  std::vector<std::uint64_t> standard_ns(kInvocations, 0);
  double sink = 0.0;

  std::vector<Comment> comments(kInvocations * kBatch);
  for (std::size_t i = 0; i < kSessions; ++i) {
    for (std::size_t k = 0; k < comments.size(); ++k) {
      comments[k].arrival_time = static_cast<Tick>(k + 1);
      comments[k].text = pool_text(i + k * 5);
    }

    MediaSession inc = session("c2", profile(100, 50, 10), "hello", 0);
    inc.comments = comments;
    for (std::size_t k = 0; k < kInvocations; ++k) {
      const std::uint64_t t0 = now_ns();
      if (k == 0) ensure_cached_features(inc, lexicon);
      std::span<const Comment> batch(inc.comments.data() + inc.processed_count, kBatch);
      AdditiveDelta delta = extract_delta(batch, lexicon);
      const FeatureVector& folded = fold_delta(inc, delta, kBatch);
      Classification result = predict_incremental(model, inc, folded);
      incremental_ns[k] += now_ns() - t0;
      sink += result.confidence;
    }

    MediaSession std_session = session("c2s", profile(100, 50, 10), "hello", 0);
    std_session.comments = comments;
    for (std::size_t k = 0; k < kInvocations; ++k) {
      const std::uint64_t t0 = now_ns();
      FeatureVector features =
          extract_batch(std_session, (k + 1) * kBatch, lexicon);
      Classification result = predict(model, features);
      standard_ns[k] += now_ns() - t0;
      sink += result.confidence;
    }
  }

  std::uint64_t incremental_total = 0, standard_total = 0;
  for (std::size_t k = 0; k < kInvocations; ++k) {
    incremental_total += incremental_ns[k];
    standard_total += standard_ns[k];
  }

  const double inc_ratio =
      static_cast<double>(incremental_ns[49]) / static_cast<double>(incremental_ns[4]);
  const double std_ratio =
      static_cast<double>(standard_ns[49]) / static_cast<double>(standard_ns[4]);
  const double total_ratio =
      static_cast<double>(standard_total) / static_cast<double>(incremental_total);

  c.passed = inc_ratio <= 2.0 && std_ratio >= 5.0 && total_ratio >= 5.0;
  c.detail = format("5000 sessions x 50 invocations: incremental 50th/5th %.2f "
                    "(<=2), standard 50th/5th %.2f (>=5), standard/incremental "
                    "total %.1fx (>=5), checksum %.1f",
                    inc_ratio, std_ratio, total_ratio, sink);
  return c;
}

// ---------------------------------------------------------------- C3 ----

Criterion c3_scheduler_contract() {
  Criterion c;
  c.name = "C3 three-queue walkthrough is exact and no session starves";

  SchedulerConfig config;
  Scheduler s(config);
  s.admit("M1", Priority::High);
  s.admit("M2", Priority::High);
  s.admit("M3", Priority::Low);

  std::vector<std::string> served;
  auto serve = [&](Priority next_priority) {
    auto id = s.next();
    if (!id.has_value()) return false;
    served.push_back(*id);
    s.requeue(*id, next_priority);
    return true;
  };
  serve(Priority::Low);   // M1 cools off
  serve(Priority::High);  // M2 stays hot
  serve(Priority::Low);   // M3
  serve(Priority::Low);   // M2
  serve(Priority::Low);   // M1
  const std::vector<std::string> expected = {"M1", "M2", "M3", "M2", "M1"};
  if (served != expected) {
    std::string got;
    for (const std::string& id : served) got += id + " ";
    c.detail = "walkthrough served " + got;
    return c;
  }

  std::mt19937_64 rng(3003);
  Scheduler fuzz{SchedulerConfig{}};
  std::unordered_map<std::string, std::size_t> entered_at;
  std::vector<std::string> out;
  std::size_t admitted = 0;
  std::size_t max_wait = 0;
  std::size_t services = 0;

  for (int step = 0; step < 10000; ++step) {
    const double roll = uniform01(rng);
    if (roll < 0.2 && admitted < 500) {
      const std::string id = "f" + std::to_string(admitted++);
      fuzz.admit(id, bernoulli(rng, 0.5) ? Priority::High : Priority::Low);
      entered_at[id] = fuzz.rotation_count();
    } else if (roll < 0.8) {
      auto id = fuzz.next();
      if (id.has_value()) {
        ++services;
        max_wait = std::max(max_wait, fuzz.rotation_count() - entered_at[*id]);
        out.push_back(*id);
      }
    } else if (!out.empty()) {
      const std::string id = out.back();
      out.pop_back();
      fuzz.requeue(id, bernoulli(rng, 0.5) ? Priority::High : Priority::Low);
      entered_at[id] = fuzz.rotation_count();
    }
  }

  c.passed = max_wait <= 2;
  c.detail = format("walkthrough M1 M2 M3 M2 M1 exact; %zu fuzz services, "
                    "max wait %zu rotations (<=2)",
                    services, max_wait);
  return c;
}

// ---------------------------------------------------------------- C4 ----

Criterion c4_priority_rule() {
  Criterion c;
  c.name = "C4 priority is HIGH exactly when mean confidence reaches 0.2";
  Scheduler s{SchedulerConfig{}};

  MediaSession example = session("e", profile(1, 1, 1), "", 0);
  example.confidence_history.append(0.15);
  example.confidence_history.append(0.15);
  example.confidence_history.append(0.45);
  const bool frozen_example = s.setting_priority(example) == Priority::High;

  MediaSession boundary = session("b", profile(1, 1, 1), "", 0);
  boundary.confidence_history.append(0.2);
  const bool boundary_high = s.setting_priority(boundary) == Priority::High;

  std::mt19937_64 rng(4004);
  std::size_t mismatches = 0;
  constexpr int kTrials = 10000;
  for (int trial = 0; trial < kTrials; ++trial) {
    MediaSession m = session("m", profile(1, 1, 1), "", 0);
    const int n = static_cast<int>(uniform_int(rng, 1, 40));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      double value = uniform01(rng);
      if (bernoulli(rng, 0.3)) value = 0.2;  // exercise the boundary
      m.confidence_history.append(value);
      sum += value;
    }
    const Priority expected = sum / static_cast<double>(n) >= 0.2
                                  ? Priority::High
                                  : Priority::Low;
    if (s.setting_priority(m) != expected) ++mismatches;
  }

  c.passed = frozen_example && boundary_high && mismatches == 0;
  c.detail = format("[0.15,0.15,0.45] -> %s, [0.2] -> %s, %d random histories, "
                    "%zu mismatches",
                    frozen_example ? "HIGH" : "LOW", boundary_high ? "HIGH" : "LOW",
                    kTrials, mismatches);
  return c;
}

// ---------------------------------------------------------------- C5 ----

Criterion c5_alert_rule_and_streaming_recall() {
  Criterion c;
  c.name = "C5 alert rule holds and streaming recall beats one-shot grading";

  // rule checks
  AlertManager alerts;
  MediaSession s = session("s", profile(1, 1, 1), "", 0);
  auto classify = [&](bool decision, double confidence, Tick at) {
    s.decision_history.push_back(DecisionRecord{at, decision, confidence});
    return alerts.on_classification(s, Classification{decision, confidence}, at);
  };
  bool rule_ok = true;
  rule_ok &= !classify(true, 0.9, 1).has_value();
  rule_ok &= !classify(false, 0.1, 2).has_value();
  auto first = classify(true, 0.8, 3);
  rule_ok &= first.has_value() && first->positives_since_last == 2 &&
             s.last_alert_index == 2;
  rule_ok &= !classify(true, 0.9, 4).has_value();
  auto second = classify(true, 0.9, 5);
  rule_ok &= second.has_value() && second->positives_since_last == 2;
  rule_ok &= !classify(false, 0.1, 6).has_value();
  if (!rule_ok) {
    c.detail = "alert accounting diverged from the two-positives rule";
    return c;
  }

  WorkloadConfig config;
  config.session_count = 2000;
  config.bully_fraction = 0.1;
  config.flood_fraction = 0.3;
  config.rng_seed = 50005;
  Trace trace = generate_workload(config);

  RunConfig run_config;
  run_config.policy = Policy::Dynamic;
  run_config.mode = ClassifierMode::Standard;
  RunMetrics streaming =
      run(trace, trained_models(), builtin_lexicon(), run_config);

  PrecisionRecall one_shot = single_shot_metrics(
      materialize_sessions(trace), trained_models().main, builtin_lexicon());

  c.passed = streaming.recall >= one_shot.recall;
  c.detail = format("streaming recall %.4f vs one-shot end-of-stream recall %.4f "
                    "(0.3 of bullied streams end in a supportive flood)",
                    streaming.recall, one_shot.recall);
  return c;
}

// ------------------------------------------------------------- C6/C7 ----

struct ResponsivenessRuns {
  double gain_1k = 0.0;
  double gain_10k = 0.0;
  RunMetrics dynamic_10k;
  RunMetrics round_robin_10k;
  Trace trace_10k;
};

const ResponsivenessRuns& responsiveness_runs() {
  static const ResponsivenessRuns runs = [] {
    ResponsivenessRuns r;

    WorkloadConfig config;
    config.bully_fraction = 0.05;
    config.rng_seed = 60006;
    // stretch arrivals and deepen benign comment backlogs so round-robin
    // sweeps stay expensive long after the dynamic policy has drained its
    // hot queue
    config.session_window = 140000;
    config.benign_comments_min = 50;
    config.benign_comments_max = 110;

    RunConfig dynamic_config;
    dynamic_config.policy = Policy::Dynamic;
    RunConfig rr_config;
    rr_config.policy = Policy::RoundRobin;

    config.session_count = 1000;
    Trace trace_1k = generate_workload(config);
    r.gain_1k = mean_first_alert_gain(
        run(trace_1k, trained_models(), builtin_lexicon(), rr_config),
        run(trace_1k, trained_models(), builtin_lexicon(), dynamic_config));

    config.session_count = 10000;
    r.trace_10k = generate_workload(config);
    r.dynamic_10k =
        run(r.trace_10k, trained_models(), builtin_lexicon(), dynamic_config);
    r.round_robin_10k =
        run(r.trace_10k, trained_models(), builtin_lexicon(), rr_config);
    r.gain_10k = mean_first_alert_gain(r.round_robin_10k, r.dynamic_10k);
    return r;
  }();
  return runs;
}

Criterion c6_responsiveness_gain() {
  Criterion c;
  c.name = "C6 dynamic scheduling alerts at least twice as fast as round-robin";
  const ResponsivenessRuns& runs = responsiveness_runs();
  c.passed = runs.gain_10k >= 2.0 && runs.gain_10k >= runs.gain_1k;
  c.detail = format("mean time-to-first-alert gain %.2f at 10k sessions (>=2.0), "
                    "%.2f at 1k (non-decreasing with load)",
                    runs.gain_10k, runs.gain_1k);
  return c;
}

Criterion c7_static_misses_sessions() {
  Criterion c;
  c.name = "C7 static priorities strictly lose recall against dynamic";
  const ResponsivenessRuns& runs = responsiveness_runs();

  RunConfig static_config;
  static_config.policy = Policy::Static;
  RunMetrics static_run =
      run(runs.trace_10k, trained_models(), builtin_lexicon(), static_config);

  c.passed = static_run.recall < runs.dynamic_10k.recall;
  c.detail = format("static recall %.4f < dynamic recall %.4f on 10k sessions",
                    static_run.recall, runs.dynamic_10k.recall);
  return c;
}

// ---------------------------------------------------------------- C8 ----

Criterion c8_classifier_quality() {
  Criterion c;
  c.name = "C8 gradient is analytic-exact, training separates, models round-trip";
  std::mt19937_64 rng(8008);

  double max_rel = 0.0;
  for (int instance = 0; instance < 20; ++instance) {
    const int n = static_cast<int>(uniform_int(rng, 5, 40));
    const int d = static_cast<int>(uniform_int(rng, 2, 8));
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n), w(d);
    for (int i = 0; i < n; ++i) {
      y[i] = bernoulli(rng, 0.5) ? 1.0 : 0.0;
      for (int j = 0; j < d; ++j) X(i, j) = uniform01(rng) * 4.0 - 2.0;
    }
    for (int j = 0; j < d; ++j) w[j] = uniform01(rng) * 2.0 - 1.0;
    const double b = uniform01(rng) - 0.5;
    const double l2 = instance % 2 == 0 ? 1e-4 : 0.05;

    Eigen::VectorXd grad_w(d);
    double grad_b = 0.0;
    log_loss_gradient(X, y, w, b, l2, grad_w, grad_b);

    const double h = 1e-6;
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXd wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      const double fd =
          (log_loss(X, y, wp, b, l2) - log_loss(X, y, wm, b, l2)) / (2 * h);
      max_rel = std::max(max_rel,
                         std::abs(grad_w[j] - fd) / std::max(1.0, std::abs(fd)));
    }
    const double fd_b =
        (log_loss(X, y, w, b + h, l2) - log_loss(X, y, w, b - h, l2)) / (2 * h);
    max_rel = std::max(max_rel, std::abs(grad_b - fd_b) / std::max(1.0, std::abs(fd_b)));
  }

  std::vector<LabeledExample> dataset;
  for (int i = 0; i < 300; ++i) {
    const bool label = i % 2 == 0;
    FeatureVector f;
    f.schema = SchemaId::PredictorV1;
    f.values = Eigen::VectorXd::Zero(5);
    f.values[0] = (label ? 1.5 : -1.5) + (uniform01(rng) - 0.5);
    f.values[1] = uniform01(rng) * 2.0 - 1.0;
    f.values[2] = (label ? -1.0 : 1.0) + (uniform01(rng) - 0.5);
    f.values[3] = uniform01(rng);
    f.values[4] = uniform01(rng);
    dataset.push_back({f, label});
  }
  LRModel model = train(dataset, TrainConfig{});
  int correct = 0;
  for (const LabeledExample& example : dataset) {
    if (predict(model, example.features).decision == example.label) ++correct;
  }
  const double accuracy = static_cast<double>(correct) / dataset.size();

  TempDir dir;
  save_model(model, dir.file("model.json"));
  LRModel loaded = load_model(dir.file("model.json"));
  save_model(loaded, dir.file("model2.json"));
  const bool round_trip =
      read_file(dir.file("model.json")) == read_file(dir.file("model2.json"));

  c.passed = max_rel <= 1e-5 && accuracy >= 0.95 && round_trip;
  c.detail = format("20 gradient instances, max relative error %.2g (<=1e-5); "
                    "separable accuracy %.3f (>=0.95); save/load byte-stable: %s",
                    max_rel, accuracy, round_trip ? "yes" : "no");
  return c;
}

// ---------------------------------------------------------------- C9 ----

Criterion c9_batch_size_tradeoff() {
  Criterion c;
  c.name = "C9 small batches respond faster than large ones under bursts";
  const ResponsivenessRuns& runs = responsiveness_runs();

  RunConfig base;
  std::vector<SweepCell> cells =
      sweep_thresholds(runs.trace_10k, trained_models(), builtin_lexicon(), base,
                       {0.2}, {10, 30});

  const SweepCell& small = cells[0];
  const SweepCell& large = cells[1];
  c.passed = small.batch_size == 10 && large.batch_size == 30 &&
             small.mean_gain >= large.mean_gain;
  c.detail = format("gain %.2f at batch 10 vs %.2f at batch 30 "
                    "(threshold 0.2, burst workload)",
                    small.mean_gain, large.mean_gain);
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion (*)()>> criteria = {
      {"C1", c1_incremental_equivalence},
      {"C2", c2_speedup_scaling},
      {"C3", c3_scheduler_contract},
      {"C4", c4_priority_rule},
      {"C5", c5_alert_rule_and_streaming_recall},
      {"C6", c6_responsiveness_gain},
      {"C7", c7_static_misses_sessions},
      {"C8", c8_classifier_quality},
      {"C9", c9_batch_size_tradeoff},
  };

  bool all_passed = true;
  for (const auto& [id, criterion] : criteria) {
    Criterion result;
    try {
      result = criterion();
    } catch (const std::exception& e) {
      result.name = std::string(id) + " threw an exception";
      result.passed = false;
      result.detail = e.what();
    }
    all_passed &= result.passed;
    std::printf("[%s] %s (%s)\n", result.passed ? "PASS" : "FAIL",
                result.name.c_str(), result.detail.c_str());
    std::fflush(stdout);
  }

  std::printf("%s\n", all_passed ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES above");
  return all_passed ? 0 : 1;
}
