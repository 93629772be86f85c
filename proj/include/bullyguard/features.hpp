#pragma once
// Batch and incremental feature extraction. The incremental path folds
// additive per-batch deltas into a session's cached vector so the work per
// classification depends only on the new comments, never on the total.

#include <cstddef>
#include <span>
#include <string>

#include "bullyguard/sentiment.hpp"
#include "bullyguard/types.hpp"

namespace bullyguard {

// Slot order is frozen. A schema change requires a new schema id.
enum PredictorSlot : int {
  kPredFollowers = 0,
  kPredFollowings = 1,
  kPredPosts = 2,
  kPredCaptionPolarity = 3,
  kPredCaptionSubjectivity = 4,
};

enum MainSlot : int {
  kMainFollowers = 0,
  kMainFollowings = 1,
  kMainCaptionPolarity = 2,
  kMainCaptionSubjectivity = 3,
  kMainSumCommentPolarity = 4,
  kMainSumCommentSubjectivity = 5,
  kMainNegativeWords = 6,
  kMainNegativeComments = 7,
};

// The four comment-derived MAIN_V1 features computed over one comment
// batch of size batch_size. Deltas are additive: delta(A) + delta(B) =
// delta(A concat B), componentwise.
struct AdditiveDelta {
  double sum_comment_polarity = 0.0;
  double sum_comment_subjectivity = 0.0;
  double negative_words = 0.0;
  double negative_comments = 0.0;
  std::size_t batch_size = 0;
};

// Profile + caption features only; never sees comments.
FeatureVector extract_predictor_features(const UserProfile& profile,
                                         const std::string& caption,
                                         const SentimentLexicon& lexicon);

// Full recomputation of the MAIN_V1 vector over the first `upto` comments.
FeatureVector extract_batch(const MediaSession& session, std::size_t upto,
                            const SentimentLexicon& lexicon);

// Additive features over exactly the given comments. Cost depends only on
// the batch handed in.
AdditiveDelta extract_delta(std::span<const Comment> comments,
                            const SentimentLexicon& lexicon);

// Adds a delta for comments [processed_count, processed_count + batch_size)
// into the session's cached vector, advances processed_count and returns
// the updated vector. Static slots are untouched.
const FeatureVector& fold_delta(MediaSession& session, const AdditiveDelta& delta,
                                std::size_t batch_size);

// Establishes cached_features for the session's current processed_count
// (full recomputation when absent), so fold_delta has a valid base.
const FeatureVector& ensure_cached_features(MediaSession& session,
                                            const SentimentLexicon& lexicon);

}  // namespace bullyguard
