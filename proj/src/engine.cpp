#include "bullyguard/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "bullyguard/features.hpp"
#include "bullyguard/predictor.hpp"
#include "bullyguard/session_store.hpp"

namespace bullyguard {

namespace {

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

void verify_incremental_step(const MediaSession& session,
                             const FeatureVector& folded,
                             const Classification& incremental,
                             const Models& models,
                             const SentimentLexicon& lexicon) {
  FeatureVector oracle = extract_batch(session, session.processed_count, lexicon);
  for (Eigen::Index i = 0; i < oracle.values.size(); ++i) {
    if (std::abs(oracle.values[i] - folded.values[i]) > 1e-9) {
      std::ostringstream msg;
      msg << "incremental feature drift on session " << session.session_id
          << " slot " << i << ": folded " << folded.values[i] << " vs batch "
          << oracle.values[i];
      throw std::logic_error(msg.str());
    }
  }
  Classification full = predict(models.main, folded);
  if (full.decision != incremental.decision ||
      std::abs(full.confidence - incremental.confidence) > 1e-12) {
    std::ostringstream msg;
    msg << "incremental prediction drift on session " << session.session_id
        << ": incremental " << incremental.confidence << " vs full "
        << full.confidence;
    throw std::logic_error(msg.str());
  }
}

void score_outcomes(RunMetrics& metrics) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [id, outcome] : metrics.outcomes) {
    if (!outcome.labeled) continue;
    bool alerted = outcome.alerts > 0;
    if (alerted && outcome.ground_truth) ++tp;
    if (alerted && !outcome.ground_truth) ++fp;
    if (!alerted && outcome.ground_truth) ++fn;
  }
  metrics.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  metrics.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
}

}  // namespace

const char* to_string(ClassifierMode mode) {
  return mode == ClassifierMode::Incremental ? "incremental" : "standard";
}

ClassifierMode mode_from_name(const std::string& name) {
  if (name == "incremental") return ClassifierMode::Incremental;
  if (name == "standard") return ClassifierMode::Standard;
  throw std::invalid_argument("unknown classifier mode: " + name);
}

void CostModel::validate() const {
  if (cost_per_comment_feature < 0 || cost_fixed_classify < 0 || cost_predictor < 0) {
    throw std::invalid_argument("cost model: costs must be non-negative");
  }
}

RunMetrics run(const Trace& trace, const Models& models,
               const SentimentLexicon& lexicon, const RunConfig& config) {
  config.cost.validate();
  if (models.predictor.schema != SchemaId::PredictorV1) {
    throw std::invalid_argument("run: predictor model must use schema PREDICTOR_V1");
  }
  if (models.main.schema != SchemaId::MainV1) {
    throw std::invalid_argument("run: main model must use schema MAIN_V1");
  }
  trace.validate();

  SessionStore store;
  Scheduler scheduler(SchedulerConfig{config.policy, config.confidence_threshold,
                                      config.batch_size, config.chunk_mode});
  AlertManager alert_manager(config.alert_threshold);
  RunMetrics metrics;

  Tick clock = 0;
  std::size_t next_event = 0;
  std::size_t servable_backlog = 0;  // unprocessed comments on servable sessions
  std::unordered_map<std::string, bool> servable;

  auto charge = [&](Tick cost) {
    clock += cost;
    metrics.total_ticks += cost;
  };

  auto ingest = [&] {
    while (next_event < trace.events.size() &&
           event_time(trace.events[next_event]) <= clock) {
      const TraceEvent& event = trace.events[next_event++];
      if (const auto* s = std::get_if<SessionEvent>(&event)) {
        MediaSession session;
        session.session_id = s->id;
        session.poster = UserProfile{s->followers, s->followings, s->posts};
        session.caption = s->caption;
        session.created_at = s->created_at;
        session.ground_truth_label = s->label;

        InitialPrediction initial = predict_initial_priority(
            models.predictor, session.poster, session.caption, lexicon);
        session.priority = initial.priority;
        store.insert(std::move(session));
        scheduler.admit(s->id, initial.priority);
        charge(config.cost.cost_predictor);

        servable[s->id] = config.policy != Policy::Static ||
                          initial.priority == Priority::High;
        SessionOutcome outcome;
        outcome.created_at = s->created_at;
        outcome.labeled = s->label.has_value();
        outcome.ground_truth = s->label.value_or(false);
        outcome.initial_priority = initial.priority;
        metrics.outcomes.emplace(s->id, outcome);
        ++metrics.sessions;
      } else {
        const auto& c = std::get<CommentEvent>(event);
        store.append_comments(c.session_id, {Comment{c.at, c.text}});
        if (servable.at(c.session_id)) ++servable_backlog;
      }
    }
  };

  for (;;) {
    ingest();
    if (servable_backlog == 0) {
      if (next_event < trace.events.size()) {
        clock = std::max(clock, event_time(trace.events[next_event]));
        continue;
      }
      break;
    }

    std::optional<std::string> id = scheduler.next();
    if (!id.has_value()) {
      throw std::logic_error("engine: backlog present but no session queued");
    }
    MediaSession& session = store.get(*id);
    std::span<const Comment> batch = scheduler.take_batch(session);
    if (batch.empty()) {
      // nothing to classify; keep the session cycling at its current
      // priority without touching its confidence history
      scheduler.requeue(*id, session.priority);
      continue;
    }

    const std::size_t folded = batch.size();
    Classification result;
    std::uint64_t started = config.time_invocations ? now_ns() : 0;
    std::size_t ordinal = session.decision_history.size();
    if (config.mode == ClassifierMode::Incremental) {
      ensure_cached_features(session, lexicon);
      AdditiveDelta delta = extract_delta(batch, lexicon);
      const FeatureVector& features = fold_delta(session, delta, folded);
      result = predict_incremental(models.main, session, features);
      if (config.verify_features) {
        verify_incremental_step(session, features, result, models, lexicon);
      }
    } else {
      std::size_t upto = session.processed_count + folded;
      FeatureVector features = extract_batch(session, upto, lexicon);
      session.processed_count = upto;
      result = predict(models.main, features);
    }
    if (config.time_invocations) {
      std::uint64_t elapsed = now_ns() - started;
      if (metrics.wall_ns_by_invocation.size() <= ordinal) {
        metrics.wall_ns_by_invocation.resize(ordinal + 1, 0);
        metrics.count_by_invocation.resize(ordinal + 1, 0);
      }
      metrics.wall_ns_by_invocation[ordinal] += elapsed;
      ++metrics.count_by_invocation[ordinal];
    }

    charge(config.cost.classify_cost(folded));
    servable_backlog -= folded;
    session.decision_history.push_back(DecisionRecord{clock, result.decision,
                                                      result.confidence});
    session.confidence_history.append(result.confidence);

    Priority next_priority = session.priority;
    if (config.policy == Policy::Dynamic) {
      next_priority = scheduler.setting_priority(session);
    }
    if (std::optional<AlertRecord> alert =
            alert_manager.on_classification(session, result, clock)) {
      SessionOutcome& outcome = metrics.outcomes.at(*id);
      ++outcome.alerts;
      if (!outcome.first_alert_at.has_value()) outcome.first_alert_at = clock;
      metrics.alert_stream.push_back(std::move(*alert));
      ++metrics.alerts;
    }
    scheduler.requeue(*id, next_priority);
    ++metrics.outcomes.at(*id).classifications;
    ++metrics.classifications;
  }

  metrics.final_clock = clock;
  score_outcomes(metrics);
  return metrics;
}

double mean_first_alert_gain(const RunMetrics& baseline,
                             const RunMetrics& comparison) {
  std::vector<std::string> ids;
  ids.reserve(comparison.outcomes.size());
  for (const auto& [id, outcome] : comparison.outcomes) {
    if (outcome.labeled && outcome.ground_truth && outcome.first_alert_at) {
      ids.push_back(id);
    }
  }
  std::sort(ids.begin(), ids.end());

  double sum = 0.0;
  std::size_t count = 0;
  for (const std::string& id : ids) {
    auto it = baseline.outcomes.find(id);
    if (it == baseline.outcomes.end() || !it->second.first_alert_at) continue;
    const SessionOutcome& base = it->second;
    const SessionOutcome& comp = comparison.outcomes.at(id);
    auto base_time = static_cast<double>(
        std::max<Tick>(1, *base.first_alert_at - base.created_at));
    auto comp_time = static_cast<double>(
        std::max<Tick>(1, *comp.first_alert_at - comp.created_at));
    sum += base_time / comp_time;
    ++count;
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

std::vector<SweepCell> sweep_thresholds(const Trace& trace, const Models& models,
                                        const SentimentLexicon& lexicon,
                                        const RunConfig& base,
                                        const std::vector<double>& thresholds,
                                        const std::vector<std::size_t>& batch_sizes) {
  if (thresholds.empty() || batch_sizes.empty()) {
    throw std::invalid_argument("sweep: empty threshold or batch-size grid");
  }

  // one round-robin baseline per batch size; thresholds do not affect it
  std::vector<std::future<RunMetrics>> baseline_futures;
  baseline_futures.reserve(batch_sizes.size());
  for (std::size_t batch : batch_sizes) {
    RunConfig config = base;
    config.policy = Policy::RoundRobin;
    config.batch_size = batch;
    baseline_futures.push_back(std::async(std::launch::async, [=, &trace, &models,
                                                               &lexicon] {
      return run(trace, models, lexicon, config);
    }));
  }

  std::vector<std::future<RunMetrics>> cell_futures;
  cell_futures.reserve(thresholds.size() * batch_sizes.size());
  for (double threshold : thresholds) {
    for (std::size_t batch : batch_sizes) {
      RunConfig config = base;
      config.policy = Policy::Dynamic;
      config.confidence_threshold = threshold;
      config.batch_size = batch;
      cell_futures.push_back(std::async(std::launch::async, [=, &trace, &models,
                                                             &lexicon] {
        return run(trace, models, lexicon, config);
      }));
    }
  }

  std::vector<RunMetrics> baselines;
  baselines.reserve(baseline_futures.size());
  for (auto& f : baseline_futures) baselines.push_back(f.get());

  std::vector<SweepCell> cells;
  cells.reserve(cell_futures.size());
  std::size_t index = 0;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    for (std::size_t b = 0; b < batch_sizes.size(); ++b) {
      RunMetrics dynamic_metrics = cell_futures[index++].get();
      SweepCell cell;
      cell.confidence_threshold = thresholds[t];
      cell.batch_size = batch_sizes[b];
      cell.mean_gain = mean_first_alert_gain(baselines[b], dynamic_metrics);
      cell.alerts = dynamic_metrics.alerts;
      cell.precision = dynamic_metrics.precision;
      cell.recall = dynamic_metrics.recall;
      cell.dynamic_ticks = dynamic_metrics.total_ticks;
      cell.baseline_ticks = baselines[b].total_ticks;
      cells.push_back(cell);
    }
  }
  return cells;
}

double tune_predictor(const LRModel& model,
                      const std::vector<LabeledExample>& corpus,
                      double min_precision) {
  if (!(min_precision >= 0.0 && min_precision <= 1.0)) {
    throw std::invalid_argument("tune_predictor: min_precision outside [0,1]");
  }
  std::size_t positives = 0;
  std::vector<std::pair<double, bool>> scored;  // confidence, label
  scored.reserve(corpus.size());
  for (const LabeledExample& example : corpus) {
    scored.emplace_back(predict(model, example.features).confidence, example.label);
    if (example.label) ++positives;
  }
  if (positives == 0 || positives == corpus.size()) {
    throw std::invalid_argument("tune_predictor: corpus must contain both labels");
  }

  std::vector<double> candidates;
  candidates.reserve(scored.size());
  for (const auto& [confidence, label] : scored) candidates.push_back(confidence);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // recall never increases with the threshold, so the lowest threshold
  // meeting the precision floor maximizes recall
  for (double threshold : candidates) {
    std::size_t tp = 0, fp = 0;
    for (const auto& [confidence, label] : scored) {
      if (confidence >= threshold) {
        (label ? tp : fp) += 1;
      }
    }
    if (tp + fp == 0) continue;
    double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (precision >= min_precision) return threshold;
  }
  throw std::runtime_error("tune_predictor: no threshold reaches precision " +
                           std::to_string(min_precision));
}

std::vector<LabeledExample> predictor_examples(
    const std::vector<MediaSession>& sessions, const SentimentLexicon& lexicon) {
  std::vector<LabeledExample> examples;
  for (const MediaSession& session : sessions) {
    if (!session.ground_truth_label.has_value()) continue;
    examples.push_back(LabeledExample{
        extract_predictor_features(session.poster, session.caption, lexicon),
        *session.ground_truth_label});
  }
  return examples;
}

std::vector<LabeledExample> main_examples(const std::vector<MediaSession>& sessions,
                                          const SentimentLexicon& lexicon,
                                          std::size_t batch_size) {
  if (batch_size == 0) {
    throw std::invalid_argument("main_examples: batch_size must be positive");
  }
  std::vector<LabeledExample> examples;
  for (const MediaSession& session : sessions) {
    if (!session.ground_truth_label.has_value()) continue;
    const bool label = *session.ground_truth_label;
    std::size_t total = session.comments.size();
    std::size_t previous = 0;
    for (std::size_t upto = std::min(batch_size, total); upto != previous;
         upto = std::min(upto * 2, total)) {
      examples.push_back(
          LabeledExample{extract_batch(session, upto, lexicon), label});
      previous = upto;
    }
    if (total == 0) {
      examples.push_back(
          LabeledExample{extract_batch(session, 0, lexicon), label});
    }
  }
  return examples;
}

PrecisionRecall single_shot_metrics(const std::vector<MediaSession>& sessions,
                                    const LRModel& main,
                                    const SentimentLexicon& lexicon) {
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const MediaSession& session : sessions) {
    if (!session.ground_truth_label.has_value()) continue;
    bool truth = *session.ground_truth_label;
    bool decided =
        predict(main, extract_batch(session, session.comments.size(), lexicon))
            .decision;
    if (decided && truth) ++tp;
    if (decided && !truth) ++fp;
    if (!decided && truth) ++fn;
  }
  PrecisionRecall result;
  result.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  result.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  return result;
}

}  // namespace bullyguard
