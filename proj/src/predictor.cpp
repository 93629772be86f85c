#include "bullyguard/predictor.hpp"

#include <stdexcept>

#include "bullyguard/features.hpp"

namespace bullyguard {

InitialPrediction predict_initial_priority(const LRModel& model,
                                           const UserProfile& profile,
                                           const std::string& caption,
                                           const SentimentLexicon& lexicon) {
  if (model.schema != SchemaId::PredictorV1) {
    throw std::invalid_argument(
        std::string("predict_initial_priority: model schema must be ") +
        schema_name(SchemaId::PredictorV1) + ", got " + schema_name(model.schema));
  }
  FeatureVector features = extract_predictor_features(profile, caption, lexicon);
  Classification result = predict(model, features);
  return InitialPrediction{result.decision ? Priority::High : Priority::Low,
                           result.confidence};
}

}  // namespace bullyguard
