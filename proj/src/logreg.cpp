#include "hype/logreg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "hype/util.hpp"

namespace hype::baselines {

Regularization regularization_from_string(const std::string& name) {
  if (name == "l1" || name == "L1") return Regularization::L1;
  if (name == "l2" || name == "L2") return Regularization::L2;
  throw std::invalid_argument("unknown regularization: " + name);
}

std::string to_string(Regularization reg) { return reg == Regularization::L1 ? "l1" : "l2"; }

double stable_sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double affine_score(const LinearModel& model, const features::SparseVector& x) {
  double z = model.bias;
  for (const auto& [id, value] : x.items) z += model.weights[id] * value;
  return z;
}

double regularizer(const LinearModel& model) {
  if (model.lambda == 0.0) return 0.0;
  if (model.reg == Regularization::L2) return model.lambda * 0.5 * model.weights.squaredNorm();
  return model.lambda * model.weights.cwiseAbs().sum();
}

void add_regularizer_gradient(const LinearModel& model, Eigen::VectorXd& grad) {
  if (model.lambda == 0.0) return;
  if (model.reg == Regularization::L2) {
    grad += model.lambda * model.weights;
  } else {
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      double w = model.weights[i];
      if (w > 0) grad[i] += model.lambda;
      else if (w < 0) grad[i] -= model.lambda;
    }
  }
}

}  // namespace

LinearModel train_logreg(const std::vector<features::SparseVector>& X, const std::vector<int>& y,
                         int dim, const LogRegConfig& config) {
  if (X.empty() || X.size() != y.size())
    throw std::invalid_argument("train_logreg: need matching, non-empty X and y");
  if (dim < 0) throw std::invalid_argument("train_logreg: negative dimension");
  LinearModel model;
  model.weights = Eigen::VectorXd::Zero(dim);
  model.reg = config.reg;
  model.lambda = config.lambda;

  bool has_pos = false, has_neg = false;
  for (int label : y) (label ? has_pos : has_neg) = true;
  model.single_class_warning = !(has_pos && has_neg);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(X.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    util::shuffle(order, rng);
    for (std::size_t idx : order) {
      const features::SparseVector& x = X[idx];
      double g = stable_sigmoid(affine_score(model, x)) - static_cast<double>(y[idx]);
      // Regularizer first so the data gradient applies to this step's weights.
      if (model.lambda != 0.0) {
        if (model.reg == Regularization::L2) {
          model.weights *= (1.0 - config.learning_rate * model.lambda);
        } else {
          for (Eigen::Index i = 0; i < model.weights.size(); ++i) {
            double w = model.weights[i];
            if (w > 0) model.weights[i] -= config.learning_rate * model.lambda;
            else if (w < 0) model.weights[i] += config.learning_rate * model.lambda;
          }
        }
      }
      for (const auto& [id, value] : x.items) model.weights[id] -= config.learning_rate * g * value;
      model.bias -= config.learning_rate * g;
    }
  }
  return model;
}

double predict_logreg(const LinearModel& model, const features::SparseVector& x) {
  return stable_sigmoid(affine_score(model, x));
}

double logreg_loss(const LinearModel& model, const std::vector<features::SparseVector>& X,
                   const std::vector<int>& y) {
  if (X.empty() || X.size() != y.size())
    throw std::invalid_argument("logreg_loss: need matching, non-empty X and y");
  double loss = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    double z = affine_score(model, X[i]);
    loss += softplus(z) - static_cast<double>(y[i]) * z;
  }
  return loss / static_cast<double>(X.size()) + regularizer(model);
}

void logreg_loss_gradient(const LinearModel& model, const std::vector<features::SparseVector>& X,
                          const std::vector<int>& y, Eigen::VectorXd& grad_weights,
                          double& grad_bias) {
  if (X.empty() || X.size() != y.size())
    throw std::invalid_argument("logreg_loss_gradient: need matching, non-empty X and y");
  grad_weights = Eigen::VectorXd::Zero(model.weights.size());
  grad_bias = 0.0;
  const double scale = 1.0 / static_cast<double>(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    double g = (stable_sigmoid(affine_score(model, X[i])) - static_cast<double>(y[i])) * scale;
    for (const auto& [id, value] : X[i].items) grad_weights[id] += g * value;
    grad_bias += g;
  }
  add_regularizer_gradient(model, grad_weights);
}

features::SparseVector to_sparse(const Eigen::VectorXd& dense) {
  features::SparseVector v;
  for (Eigen::Index i = 0; i < dense.size(); ++i)
    if (dense[i] != 0.0) v.items.emplace_back(static_cast<int>(i), dense[i]);
  return v;
}

void save_linear_model_file(const StoredLinearModel& stored, const std::string& path) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = stored.kind;
  j["reg"] = to_string(stored.model.reg);
  j["lambda"] = stored.model.lambda;
  j["bias"] = stored.model.bias;
  j["weights"] = std::vector<double>(stored.model.weights.data(),
                                     stored.model.weights.data() + stored.model.weights.size());
  j["single_class_warning"] = stored.model.single_class_warning;
  if (stored.kind == "snow" || stored.kind == "snow-gen") {
    j["feature_space"] = {{"generalized", stored.space.generalized},
                          {"paths", stored.space.paths},
                          {"scores", stored.space.scores}};
  } else if (stored.kind == "dist-logreg") {
    j["dist_method"] = stored.dist_method;
    j["embeddings_path"] = stored.embeddings_path;
  }
  util::atomic_write_file(path, j.dump() + "\n");
}

StoredLinearModel load_linear_model_file(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(util::read_file(path));
  if (j.value("format_version", 0) != 1)
    throw std::runtime_error("not a version-1 linear model: " + path);
  StoredLinearModel stored;
  stored.kind = j.at("kind").get<std::string>();
  if (stored.kind != "snow" && stored.kind != "snow-gen" && stored.kind != "dist-logreg")
    throw std::runtime_error("unknown linear model kind '" + stored.kind + "' in " + path);
  stored.model.reg = regularization_from_string(j.at("reg").get<std::string>());
  stored.model.lambda = j.at("lambda").get<double>();
  stored.model.bias = j.at("bias").get<double>();
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  stored.model.weights = Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
  stored.model.single_class_warning = j.value("single_class_warning", false);
  if (stored.kind == "snow" || stored.kind == "snow-gen") {
    const nlohmann::json& fs = j.at("feature_space");
    stored.space.generalized = fs.at("generalized").get<bool>();
    stored.space.paths = fs.at("paths").get<std::vector<std::string>>();
    stored.space.scores = fs.at("scores").get<std::vector<double>>();
    if (stored.space.paths.size() != stored.space.scores.size())
      throw std::runtime_error("corrupt feature space in " + path);
    for (std::size_t i = 0; i < stored.space.paths.size(); ++i)
      stored.space.ids.emplace(stored.space.paths[i], static_cast<int>(i));
  } else {
    stored.dist_method = j.at("dist_method").get<std::string>();
    stored.embeddings_path = j.value("embeddings_path", "");
  }
  return stored;
}

}  // namespace hype::baselines
