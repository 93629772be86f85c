#pragma once
// The deterministic discrete-time driver: replays a sorted event trace
// through predict -> schedule -> extract -> classify -> reprioritize ->
// alert, advancing a virtual clock by a configurable cost model. Costs
// depend only on the work items (comments folded per invocation), never on
// the classifier mode, so INCREMENTAL and STANDARD runs of one trace
// produce identical schedules, decisions and alerts; the modes differ only
// in measured wall-clock work.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bullyguard/alerts.hpp"
#include "bullyguard/logistic.hpp"
#include "bullyguard/scheduler.hpp"
#include "bullyguard/sentiment.hpp"
#include "bullyguard/trace.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

enum class ClassifierMode { Incremental, Standard };

const char* to_string(ClassifierMode mode);
ClassifierMode mode_from_name(const std::string& name);  // incremental|standard

struct CostModel {
  Tick cost_per_comment_feature = 1;
  Tick cost_fixed_classify = 2;
  Tick cost_predictor = 1;

  void validate() const;
  Tick classify_cost(std::size_t comments_folded) const {
    return cost_fixed_classify +
           cost_per_comment_feature * static_cast<Tick>(comments_folded);
  }
};

struct Models {
  LRModel predictor;  // PREDICTOR_V1
  LRModel main;       // MAIN_V1
};

struct RunConfig {
  Policy policy = Policy::Dynamic;
  ClassifierMode mode = ClassifierMode::Incremental;
  CostModel cost;
  double confidence_threshold = 0.2;
  std::size_t batch_size = 10;
  ChunkMode chunk_mode = ChunkMode::Capped;
  std::size_t alert_threshold = 2;
  // cross-check every incremental fold/prediction against full
  // recomputation (throws on divergence); test harness use
  bool verify_features = false;
  // measure wall-clock nanoseconds of each classification, aggregated by
  // per-session invocation ordinal
  bool time_invocations = false;
};

struct SessionOutcome {
  Tick created_at = 0;
  bool labeled = false;
  bool ground_truth = false;
  Priority initial_priority = Priority::Low;
  std::size_t classifications = 0;
  std::size_t alerts = 0;
  std::optional<Tick> first_alert_at;
};

struct RunMetrics {
  std::size_t sessions = 0;
  std::size_t classifications = 0;
  std::size_t alerts = 0;
  Tick total_ticks = 0;  // sum of every cost charged to the virtual clock
  Tick final_clock = 0;  // total_ticks plus idle jumps to future events
  double precision = 0.0;  // session-level, alerted vs ground truth
  double recall = 0.0;
  std::vector<AlertRecord> alert_stream;
  std::unordered_map<std::string, SessionOutcome> outcomes;
  // filled when time_invocations is set; index = invocation ordinal
  std::vector<std::uint64_t> wall_ns_by_invocation;
  std::vector<std::uint64_t> count_by_invocation;
};

RunMetrics run(const Trace& trace, const Models& models,
               const SentimentLexicon& lexicon, const RunConfig& config);

// Mean over ground-truth-positive sessions alerted in both runs of
// (baseline time to first alert) / (comparison time to first alert),
// times measured from session creation. 0.0 when no session qualifies.
double mean_first_alert_gain(const RunMetrics& baseline,
                             const RunMetrics& comparison);

struct SweepCell {
  double confidence_threshold = 0.0;
  std::size_t batch_size = 0;
  double mean_gain = 0.0;
  std::size_t alerts = 0;
  double precision = 0.0;
  double recall = 0.0;
  Tick dynamic_ticks = 0;
  Tick baseline_ticks = 0;
};

// Runs the dynamic policy for every threshold x batch-size cell against a
// round-robin baseline with the same batch size. Cells run concurrently;
// results are ordered by (threshold index, batch index).
std::vector<SweepCell> sweep_thresholds(const Trace& trace, const Models& models,
                                        const SentimentLexicon& lexicon,
                                        const RunConfig& base,
                                        const std::vector<double>& thresholds,
                                        const std::vector<std::size_t>& batch_sizes);

// Lowest decision threshold whose precision on the corpus is at least
// min_precision; recall is maximal there since it never increases with
// the threshold. Throws when no threshold reaches the floor.
double tune_predictor(const LRModel& model,
                      const std::vector<LabeledExample>& corpus,
                      double min_precision);

// Training-set builders over materialized labeled sessions (unlabeled
// sessions are skipped).
std::vector<LabeledExample> predictor_examples(
    const std::vector<MediaSession>& sessions, const SentimentLexicon& lexicon);
// one example per comment-count prefix (batch_size, doubling up to the
// full stream), so the classifier trains on the cumulative views the
// engine actually classifies
std::vector<LabeledExample> main_examples(const std::vector<MediaSession>& sessions,
                                          const SentimentLexicon& lexicon,
                                          std::size_t batch_size);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Classifies each labeled session once over its whole comment stream (the
// non-streaming baseline an alert pipeline is compared against).
PrecisionRecall single_shot_metrics(const std::vector<MediaSession>& sessions,
                                    const LRModel& main,
                                    const SentimentLexicon& lexicon);

}  // namespace bullyguard
