#pragma once
// One-shot priority prediction at session creation from profile and
// caption features only. Pure; runs once per session before it enters the
// scheduler. Ties at the threshold go HIGH: missing a bully session is the
// costly error, so the predictor is recall-first.

#include <string>

#include "bullyguard/logistic.hpp"
#include "bullyguard/sentiment.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

struct InitialPrediction {
  Priority priority = Priority::Low;
  double confidence = 0.0;
};

InitialPrediction predict_initial_priority(const LRModel& model,
                                           const UserProfile& profile,
                                           const std::string& caption,
                                           const SentimentLexicon& lexicon);

}  // namespace bullyguard
