#include "bullyguard/features.hpp"

#include <stdexcept>

namespace bullyguard {

FeatureVector extract_predictor_features(const UserProfile& profile,
                                         const std::string& caption,
                                         const SentimentLexicon& lexicon) {
  TextScore caption_score = score_text(caption, lexicon);
  FeatureVector fv;
  fv.schema = SchemaId::PredictorV1;
  fv.values.resize(schema_length(fv.schema));
  fv.values[kPredFollowers] = static_cast<double>(profile.follower_count);
  fv.values[kPredFollowings] = static_cast<double>(profile.following_count);
  fv.values[kPredPosts] = static_cast<double>(profile.post_count);
  fv.values[kPredCaptionPolarity] = caption_score.polarity;
  fv.values[kPredCaptionSubjectivity] = caption_score.subjectivity;
  return fv;
}

FeatureVector extract_batch(const MediaSession& session, std::size_t upto,
                            const SentimentLexicon& lexicon) {
  if (upto > session.comments.size()) {
    throw std::out_of_range("extract_batch: upto " + std::to_string(upto) +
                            " exceeds comment count " +
                            std::to_string(session.comments.size()) +
                            " for session " + session.session_id);
  }
  AdditiveDelta sums = extract_delta(
      std::span<const Comment>(session.comments.data(), upto), lexicon);
  TextScore caption_score = score_text(session.caption, lexicon);

  FeatureVector fv;
  fv.schema = SchemaId::MainV1;
  fv.values.resize(schema_length(fv.schema));
  fv.values[kMainFollowers] = static_cast<double>(session.poster.follower_count);
  fv.values[kMainFollowings] = static_cast<double>(session.poster.following_count);
  fv.values[kMainCaptionPolarity] = caption_score.polarity;
  fv.values[kMainCaptionSubjectivity] = caption_score.subjectivity;
  fv.values[kMainSumCommentPolarity] = sums.sum_comment_polarity;
  fv.values[kMainSumCommentSubjectivity] = sums.sum_comment_subjectivity;
  fv.values[kMainNegativeWords] = sums.negative_words;
  fv.values[kMainNegativeComments] = sums.negative_comments;
  return fv;
}

AdditiveDelta extract_delta(std::span<const Comment> comments,
                            const SentimentLexicon& lexicon) {
  AdditiveDelta delta;
  delta.batch_size = comments.size();
  for (const Comment& comment : comments) {
    TextScore score = score_text(comment.text, lexicon);
    delta.sum_comment_polarity += score.polarity;
    delta.sum_comment_subjectivity += score.subjectivity;
    delta.negative_words += static_cast<double>(score.negative_words);
    if (score.negative_words >= 1) {
      delta.negative_comments += 1.0;
    }
  }
  return delta;
}

const FeatureVector& fold_delta(MediaSession& session, const AdditiveDelta& delta,
                                std::size_t batch_size) {
  if (!session.cached_features.has_value()) {
    throw std::logic_error("fold_delta: no cached feature vector for session " +
                           session.session_id);
  }
  if (delta.batch_size != batch_size) {
    throw std::invalid_argument(
        "fold_delta: delta computed over " + std::to_string(delta.batch_size) +
        " comments but batch_size is " + std::to_string(batch_size));
  }
  if (session.processed_count + batch_size > session.comments.size()) {
    throw std::out_of_range("fold_delta: batch extends past the comment stream of session " +
                            session.session_id);
  }
  Eigen::VectorXd& values = session.cached_features->values;
  values[kMainSumCommentPolarity] += delta.sum_comment_polarity;
  values[kMainSumCommentSubjectivity] += delta.sum_comment_subjectivity;
  values[kMainNegativeWords] += delta.negative_words;
  values[kMainNegativeComments] += delta.negative_comments;
  session.processed_count += batch_size;
  return *session.cached_features;
}

const FeatureVector& ensure_cached_features(MediaSession& session,
                                            const SentimentLexicon& lexicon) {
  if (!session.cached_features.has_value()) {
    session.cached_features =
        extract_batch(session, session.processed_count, lexicon);
  }
  return *session.cached_features;
}

}  // namespace bullyguard
