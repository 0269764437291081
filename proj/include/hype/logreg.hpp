// Regularized logistic regression trained by seeded stochastic gradient
// descent, used by the Snow-style path baselines and the supervised
// distributional baseline.
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "hype/feature_space.hpp"

namespace hype::baselines {

enum class Regularization { L1, L2 };

Regularization regularization_from_string(const std::string& name);
std::string to_string(Regularization reg);

struct LinearModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  Regularization reg = Regularization::L2;
  double lambda = 0.0;
  bool single_class_warning = false;
};

struct LogRegConfig {
  Regularization reg = Regularization::L2;
  double lambda = 1e-4;
  int epochs = 30;
  double learning_rate = 0.1;
  std::uint64_t seed = 1;
};

double stable_sigmoid(double z);

LinearModel train_logreg(const std::vector<features::SparseVector>& X, const std::vector<int>& y,
                         int dim, const LogRegConfig& config);

// Positive-class probability; classify positive above 0.5.
double predict_logreg(const LinearModel& model, const features::SparseVector& x);

// Full-batch objective (mean negative log-likelihood plus the regularizer)
// and its gradient; the finite-difference tests check against this.
double logreg_loss(const LinearModel& model, const std::vector<features::SparseVector>& X,
                   const std::vector<int>& y);
void logreg_loss_gradient(const LinearModel& model, const std::vector<features::SparseVector>& X,
                          const std::vector<int>& y, Eigen::VectorXd& grad_weights,
                          double& grad_bias);

// Dense-feature convenience used by the distributional baseline.
features::SparseVector to_sparse(const Eigen::VectorXd& dense);

// Versioned JSON container for a trained linear baseline: the Snow-style
// path models carry their feature space, the distributional one its pair
// method and the embeddings file it was trained with.
struct StoredLinearModel {
  std::string kind;  // "snow" | "snow-gen" | "dist-logreg"
  LinearModel model;
  features::FeatureSpace space;  // snow/snow-gen
  std::string dist_method;       // dist-logreg
  std::string embeddings_path;   // dist-logreg
};

void save_linear_model_file(const StoredLinearModel& stored, const std::string& path);
StoredLinearModel load_linear_model_file(const std::string& path);

}  // namespace hype::baselines
