#pragma once
// Event traces and the other on-disk formats: JSONL traces and alert
// streams, JSON models (in logistic.hpp), CSV metrics. Traces are sorted
// by time with a session's creation line preceding its comments, so they
// stream straight into the engine.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bullyguard/alerts.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

// {"t":"session","id":...,"created_at":...,"followers":...,
//  "followings":...,"posts":...,"caption":...,"label":...}  (label optional)
struct SessionEvent {
  std::string id;
  Tick created_at = 0;
  std::int64_t followers = 0;
  std::int64_t followings = 0;
  std::int64_t posts = 0;
  std::string caption;
  std::optional<bool> label;
};

// {"t":"comment","session_id":...,"at":...,"text":...}
struct CommentEvent {
  std::string session_id;
  Tick at = 0;
  std::string text;
};

using TraceEvent = std::variant<SessionEvent, CommentEvent>;

Tick event_time(const TraceEvent& event);

struct Trace {
  std::vector<TraceEvent> events;

  // throws when events are unsorted or a comment precedes its session
  void validate() const;
};

void write_trace(const Trace& trace, const std::filesystem::path& path);
Trace read_trace(const std::filesystem::path& path);

// JSONL, one {session_id, raised_at, positives_since_last, confidence}
// object per alert.
void write_alerts(const std::vector<AlertRecord>& alerts,
                  const std::filesystem::path& path);
std::vector<AlertRecord> read_alerts(const std::filesystem::path& path);

struct MetricsRow {
  std::string policy;
  std::string classifier_mode;
  double confidence_threshold = 0.0;
  std::size_t batch_size = 0;
  std::size_t sessions = 0;
  std::size_t alerts = 0;
  double precision = 0.0;
  double recall = 0.0;
  double mean_gain = 0.0;
  Tick total_ticks = 0;
};

std::string metrics_csv(const std::vector<MetricsRow>& rows);
void write_metrics_csv(const std::vector<MetricsRow>& rows,
                       const std::filesystem::path& path);

}  // namespace bullyguard
