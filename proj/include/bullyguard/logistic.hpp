#pragma once
// Logistic regression: deterministic full-batch gradient-descent training,
// standard inference, and incremental inference that reuses cached
// per-feature weight products so unchanged features cost no multiplication.

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bullyguard/types.hpp"

namespace bullyguard {

struct LRModel {
  SchemaId schema = SchemaId::MainV1;
  Eigen::VectorXd weights;
  double bias = 0.0;
  // z-score standardization fitted on the training data; stored with the
  // model so every caller standardizes identically.
  Eigen::VectorXd means;
  Eigen::VectorXd stddevs;
  double decision_threshold = 0.5;
};

struct Classification {
  bool decision = false;   // cyberbullying?
  double confidence = 0.0; // probability of the cyberbullying class
};

struct LabeledExample {
  FeatureVector features;
  bool label = false;
};

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 400;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

double sigmoid(double z);

// Full-batch gradient descent on mean cross-entropy plus (l2/2)*||w||^2
// (bias unregularized). Deterministic: zero-initialized weights, fixed
// epoch count, so identical inputs give identical models for any seed.
LRModel train(const std::vector<LabeledExample>& dataset, const TrainConfig& config);

// confidence = sigmoid(bias + w . standardized(x)); decision is
// confidence >= decision_threshold, so ties classify positive.
Classification predict(const LRModel& model, const FeatureVector& features);

// Updates the session's score cache: only features whose standardized
// value changed since the last call have their weight product recomputed.
// Classification is identical to predict() on the same features.
Classification predict_incremental(const LRModel& model, MediaSession& session,
                                   const FeatureVector& features);

// Loss and analytic gradient over an already-standardized design matrix,
// exposed for the finite-difference gradient check.
double log_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                const Eigen::VectorXd& weights, double bias, double l2);
void log_loss_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& weights, double bias, double l2,
                       Eigen::VectorXd& grad_weights, double& grad_bias);

// Model file: JSON {schema_id, weights[], bias, means[], stddevs[],
// threshold}. save(load(f)) is byte-identical to f.
std::string model_to_json(const LRModel& model);
LRModel model_from_json(const std::string& text);
void save_model(const LRModel& model, const std::filesystem::path& path);
LRModel load_model(const std::filesystem::path& path);

}  // namespace bullyguard
