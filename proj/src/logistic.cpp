#include "bullyguard/logistic.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bullyguard {

namespace {

using nlohmann::json;

void check_schema(const LRModel& model, const FeatureVector& features,
                  const char* op) {
  if (model.schema != features.schema) {
    throw std::invalid_argument(std::string(op) + ": feature schema " +
                                schema_name(features.schema) +
                                " does not match model schema " +
                                schema_name(model.schema));
  }
  if (!features.values.allFinite()) {
    throw std::invalid_argument(std::string(op) + ": non-finite feature value");
  }
  if (features.values.size() != model.weights.size()) {
    throw std::invalid_argument(std::string(op) + ": feature length mismatch");
  }
}

Eigen::VectorXd standardized(const LRModel& model, const FeatureVector& features) {
  return (features.values - model.means).cwiseQuotient(model.stddevs);
}

Eigen::VectorXd json_to_vector(const json& arr, const char* field) {
  if (!arr.is_array()) {
    throw std::invalid_argument(std::string("model file: ") + field +
                                " must be an array");
  }
  Eigen::VectorXd v(arr.size());
  Eigen::Index i = 0;
  for (const auto& x : arr) {
    if (!x.is_number()) {
      throw std::invalid_argument(std::string("model file: ") + field +
                                  " must contain numbers only");
    }
    v[i++] = x.get<double>();
  }
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

LRModel train(const std::vector<LabeledExample>& dataset, const TrainConfig& config) {
  if (dataset.size() < 2) {
    throw std::invalid_argument("train: need at least 2 examples");
  }
  const SchemaId schema = dataset.front().features.schema;
  const Eigen::Index d = schema_length(schema);
  bool saw_positive = false;
  bool saw_negative = false;
  for (const LabeledExample& ex : dataset) {
    if (ex.features.schema != schema) {
      throw std::invalid_argument("train: mixed feature schemas in dataset");
    }
    if (!ex.features.valid()) {
      throw std::invalid_argument("train: invalid feature vector");
    }
    (ex.label ? saw_positive : saw_negative) = true;
  }
  if (!saw_positive || !saw_negative) {
    throw std::invalid_argument("train: dataset must contain both classes");
  }
  if (!(config.learning_rate > 0.0) || config.epochs <= 0 || config.l2 < 0.0) {
    throw std::invalid_argument("train: invalid training configuration");
  }

  const Eigen::Index n = static_cast<Eigen::Index>(dataset.size());
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    X.row(r) = dataset[static_cast<std::size_t>(r)].features.values;
    y[r] = dataset[static_cast<std::size_t>(r)].label ? 1.0 : 0.0;
  }

  LRModel model;
  model.schema = schema;
  model.means = X.colwise().mean();
  Eigen::MatrixXd centered = X.rowwise() - model.means.transpose();
  Eigen::VectorXd variance =
      centered.array().square().colwise().sum().transpose() / static_cast<double>(n);
  model.stddevs = variance.array().sqrt();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(model.stddevs[j] > 1e-12)) model.stddevs[j] = 1.0;
  }
  Eigen::MatrixXd Xhat =
      centered.array().rowwise() / model.stddevs.transpose().array();

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double b = 0.0;
  Eigen::VectorXd grad_w(d);
  double grad_b = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    log_loss_gradient(Xhat, y, w, b, config.l2, grad_w, grad_b);
    w -= config.learning_rate * grad_w;
    b -= config.learning_rate * grad_b;
  }
  model.weights = w;
  model.bias = b;
  return model;
}

Classification predict(const LRModel& model, const FeatureVector& features) {
  check_schema(model, features, "predict");
  double score = model.bias + model.weights.dot(standardized(model, features));
  Classification result;
  result.confidence = sigmoid(score);
  result.decision = result.confidence >= model.decision_threshold;
  return result;
}

Classification predict_incremental(const LRModel& model, MediaSession& session,
                                   const FeatureVector& features) {
  check_schema(model, features, "predict_incremental");
  ScoreCache& cache = session.score_cache;
  Eigen::VectorXd xhat = standardized(model, features);

  if (!cache.ready) {
    cache.std_values = xhat;
    cache.products = model.weights.cwiseProduct(xhat);
    cache.score = cache.products.sum();
    cache.ready = true;
    cache.last_update_count = static_cast<int>(xhat.size());
  } else {
    if (cache.std_values.size() != xhat.size()) {
      throw std::invalid_argument("predict_incremental: cache schema mismatch");
    }
    int updates = 0;
    for (Eigen::Index i = 0; i < xhat.size(); ++i) {
      if (xhat[i] != cache.std_values[i]) {
        double product = model.weights[i] * xhat[i];
        cache.score += product - cache.products[i];
        cache.products[i] = product;
        cache.std_values[i] = xhat[i];
        ++updates;
      }
    }
    cache.last_update_count = updates;
  }

  Classification result;
  result.confidence = sigmoid(model.bias + cache.score);
  result.decision = result.confidence >= model.decision_threshold;
  return result;
}

double log_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                const Eigen::VectorXd& weights, double bias, double l2) {
  const Eigen::Index n = X.rows();
  Eigen::VectorXd z = X * weights;
  z.array() += bias;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    // max(z,0) - z*y + log(1 + exp(-|z|)) is the stable cross-entropy form
    total += std::max(z[i], 0.0) - z[i] * y[i] + std::log1p(std::exp(-std::abs(z[i])));
  }
  return total / static_cast<double>(n) + 0.5 * l2 * weights.squaredNorm();
}

void log_loss_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& weights, double bias, double l2,
                       Eigen::VectorXd& grad_weights, double& grad_bias) {
  const Eigen::Index n = X.rows();
  Eigen::VectorXd z = X * weights;
  z.array() += bias;
  Eigen::VectorXd p(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = sigmoid(z[i]);
  Eigen::VectorXd residual = p - y;
  grad_weights = X.transpose() * residual / static_cast<double>(n) + l2 * weights;
  grad_bias = residual.mean();
}

std::string model_to_json(const LRModel& model) {
  json doc;
  doc["schema_id"] = schema_name(model.schema);
  doc["weights"] = vector_to_json(model.weights);
  doc["bias"] = model.bias;
  doc["means"] = vector_to_json(model.means);
  doc["stddevs"] = vector_to_json(model.stddevs);
  doc["threshold"] = model.decision_threshold;
  return doc.dump(2) + "\n";
}

LRModel model_from_json(const std::string& text) {
  json doc = json::parse(text);
  for (const char* field :
       {"schema_id", "weights", "bias", "means", "stddevs", "threshold"}) {
    if (!doc.contains(field)) {
      throw std::invalid_argument(std::string("model file: missing field ") + field);
    }
  }
  LRModel model;
  model.schema = schema_from_name(doc["schema_id"].get<std::string>());
  model.weights = json_to_vector(doc["weights"], "weights");
  model.bias = doc["bias"].get<double>();
  model.means = json_to_vector(doc["means"], "means");
  model.stddevs = json_to_vector(doc["stddevs"], "stddevs");
  model.decision_threshold = doc["threshold"].get<double>();

  const Eigen::Index d = schema_length(model.schema);
  if (model.weights.size() != d || model.means.size() != d ||
      model.stddevs.size() != d) {
    throw std::invalid_argument("model file: array lengths do not match schema " +
                                std::string(schema_name(model.schema)));
  }
  if (!(model.stddevs.array() > 0.0).all()) {
    throw std::invalid_argument("model file: stddevs must be positive");
  }
  if (!(model.decision_threshold > 0.0 && model.decision_threshold < 1.0)) {
    throw std::invalid_argument("model file: threshold must be in (0,1)");
  }
  return model;
}

void save_model(const LRModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open model file for writing: " + path.string());
  }
  out << model_to_json(model);
  if (!out) {
    throw std::runtime_error("failed writing model file: " + path.string());
  }
}

LRModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open model file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace bullyguard
