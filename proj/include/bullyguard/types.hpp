#pragma once
// Core domain types shared by every module: virtual time, sessions,
// feature vectors and the per-session classification state.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bullyguard {

// Virtual time. The simulator owns the clock; the engine never reads a
// wall clock, so every experiment is deterministic and replayable.
using Tick = std::int64_t;

enum class Priority { High, Low };

inline const char* to_string(Priority p) {
  return p == Priority::High ? "HIGH" : "LOW";
}

struct UserProfile {
  std::int64_t follower_count = 0;
  std::int64_t following_count = 0;
  std::int64_t post_count = 0;

  bool valid() const {
    return follower_count >= 0 && following_count >= 0 && post_count >= 0;
  }
};

struct Comment {
  Tick arrival_time = 0;
  std::string text;
};

// Sequence of cyberbullying-class probabilities produced by successive
// classifications of one session. The mean drives reprioritization.
class ConfidenceHistory {
 public:
  void append(double confidence) {
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
      throw std::invalid_argument("confidence outside [0,1]");
    }
    values_.push_back(confidence);
    running_sum_ += confidence;
  }

  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  double running_sum() const { return running_sum_; }
  const std::vector<double>& values() const { return values_; }

  double mean() const {
    if (values_.empty()) {
      throw std::logic_error("mean of empty confidence history");
    }
    return running_sum_ / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
  double running_sum_ = 0.0;
};

enum class SchemaId { PredictorV1, MainV1 };

inline Eigen::Index schema_length(SchemaId id) {
  return id == SchemaId::PredictorV1 ? 5 : 8;
}

inline const char* schema_name(SchemaId id) {
  return id == SchemaId::PredictorV1 ? "PREDICTOR_V1" : "MAIN_V1";
}

SchemaId schema_from_name(const std::string& name);

// Fixed-order numeric features. Ordering is frozen per schema; any schema
// change requires a new schema id.
struct FeatureVector {
  SchemaId schema = SchemaId::MainV1;
  Eigen::VectorXd values;

  bool valid() const {
    return values.size() == schema_length(schema) && values.allFinite();
  }
};

struct DecisionRecord {
  Tick at = 0;
  bool decision = false;
  double confidence = 0.0;
};

// Cached state for incremental classification: the standardized feature
// values last seen and the per-feature weight*value products, so unchanged
// features cost no multiplication on the next prediction.
struct ScoreCache {
  Eigen::VectorXd std_values;
  Eigen::VectorXd products;
  double score = 0.0;
  bool ready = false;
  int last_update_count = 0;

  void reset() {
    std_values.resize(0);
    products.resize(0);
    score = 0.0;
    ready = false;
    last_update_count = 0;
  }
};

// A posted media item plus its time-ordered comment stream and all the
// per-session state the engine accumulates: cached features, the score
// cache, confidence and decision histories, and the current priority.
//
// ground_truth_label is simulator/training bookkeeping only; feature
// extraction and classification never receive it (their interfaces take
// profile, caption and comments).
struct MediaSession {
  std::string session_id;
  UserProfile poster;
  std::string caption;
  Tick created_at = 0;
  std::vector<Comment> comments;

  std::size_t processed_count = 0;
  std::optional<FeatureVector> cached_features;
  ScoreCache score_cache;

  ConfidenceHistory confidence_history;
  std::vector<DecisionRecord> decision_history;
  Priority priority = Priority::Low;
  std::optional<std::size_t> last_alert_index;

  std::optional<bool> ground_truth_label;

  std::size_t unprocessed_count() const {
    return comments.size() - processed_count;
  }
};

}  // namespace bullyguard
