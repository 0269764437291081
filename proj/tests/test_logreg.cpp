#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "hype/logreg.hpp"
#include "hype/util.hpp"

using namespace hype;
using namespace hype::baselines;
using features::SparseVector;

namespace {

SparseVector sparse(std::initializer_list<std::pair<int, double>> items) {
  SparseVector v;
  v.items = items;
  return v;
}

// Two clusters separated along feature 0.
void separable_toy(std::vector<SparseVector>& X, std::vector<int>& y) {
  for (int i = 0; i < 20; ++i) {
    bool positive = i % 2 == 0;
    double a = positive ? 2.0 + 0.1 * i : -2.0 - 0.1 * i;
    double b = (i % 3) * 0.5;
    X.push_back(sparse({{0, a}, {1, b}}));
    y.push_back(positive ? 1 : 0);
  }
}

}  // namespace

TEST_CASE("a separable toy set is fit to training accuracy 1") {
  std::vector<SparseVector> X;
  std::vector<int> y;
  separable_toy(X, y);
  LogRegConfig config;
  config.epochs = 50;
  config.learning_rate = 0.5;
  config.lambda = 1e-4;
  LinearModel model = train_logreg(X, y, 2, config);
  CHECK_FALSE(model.single_class_warning);
  for (std::size_t i = 0; i < X.size(); ++i)
    CHECK((predict_logreg(model, X[i]) > 0.5 ? 1 : 0) == y[i]);
}

TEST_CASE("strong L2 regularization pushes predictions to the prior") {
  std::vector<SparseVector> X;
  std::vector<int> y;
  separable_toy(X, y);
  LogRegConfig config;
  config.epochs = 60;
  config.learning_rate = 0.01;
  config.lambda = 50.0;  // decay factor 0.5 per step
  LinearModel model = train_logreg(X, y, 2, config);
  CHECK(model.weights.cwiseAbs().maxCoeff() < 0.05);
  // Balanced labels: predictions hover around 0.5 regardless of features.
  for (std::size_t i = 0; i < X.size(); ++i)
    CHECK(std::abs(predict_logreg(model, X[i]) - 0.5) < 0.15);
}

TEST_CASE("full-batch gradient matches central finite differences") {
  std::mt19937_64 rng(23);
  std::vector<SparseVector> X;
  std::vector<int> y;
  const int dim = 7;
  for (int i = 0; i < 25; ++i) {
    SparseVector v;
    for (int d = 0; d < dim; ++d)
      if (util::bounded(rng, 3) != 0)
        v.items.emplace_back(d, (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 4.0 - 2.0);
    X.push_back(std::move(v));
    y.push_back(util::bounded(rng, 2) == 1 ? 1 : 0);
  }

  for (Regularization reg : {Regularization::L2, Regularization::L1}) {
    for (double lambda : {0.0, 0.3}) {
      LinearModel model;
      model.reg = reg;
      model.lambda = lambda;
      model.weights = Eigen::VectorXd(dim);
      for (int d = 0; d < dim; ++d)
        // Keep weights away from zero so the L1 subgradient is stable.
        model.weights[d] = (util::bounded(rng, 2) ? 1.0 : -1.0) *
                           (0.3 + static_cast<double>(rng() >> 11) * 0x1.0p-53);
      model.bias = 0.37;

      Eigen::VectorXd grad;
      double grad_bias;
      logreg_loss_gradient(model, X, y, grad, grad_bias);

      const double eps = 1e-6;
      for (int d = 0; d < dim; ++d) {
        LinearModel plus = model, minus = model;
        plus.weights[d] += eps;
        minus.weights[d] -= eps;
        double numeric = (logreg_loss(plus, X, y) - logreg_loss(minus, X, y)) / (2 * eps);
        CHECK(std::abs(numeric - grad[d]) / std::max({1e-8, std::abs(numeric), std::abs(grad[d])}) <
              1e-6);
      }
      LinearModel plus = model, minus = model;
      plus.bias += eps;
      minus.bias -= eps;
      double numeric = (logreg_loss(plus, X, y) - logreg_loss(minus, X, y)) / (2 * eps);
      CHECK(std::abs(numeric - grad_bias) < 1e-6);
    }
  }
}

TEST_CASE("prediction identities") {
  LinearModel zero;
  zero.weights = Eigen::VectorXd::Zero(3);
  CHECK(predict_logreg(zero, sparse({{0, 5.0}, {2, -3.0}})) == 0.5);

  LinearModel biased = zero;
  biased.bias = 1.25;
  CHECK(predict_logreg(biased, sparse({})) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.25))).epsilon(1e-15));
}

TEST_CASE("prediction is monotone in a positively weighted feature") {
  LinearModel model;
  model.weights = Eigen::VectorXd(2);
  model.weights << 0.8, -0.4;
  double prev = -1.0;
  for (double v = 0.0; v <= 5.0; v += 0.25) {
    double p = predict_logreg(model, sparse({{0, v}, {1, 2.0}}));
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("single-class training flags a warning but still runs") {
  std::vector<SparseVector> X{sparse({{0, 1.0}}), sparse({{0, 2.0}})};
  std::vector<int> y{1, 1};
  LinearModel model = train_logreg(X, y, 1, {});
  CHECK(model.single_class_warning);
  CHECK(predict_logreg(model, X[0]) > 0.5);
}

TEST_CASE("training is deterministic in the seed") {
  std::vector<SparseVector> X;
  std::vector<int> y;
  separable_toy(X, y);
  LogRegConfig config;
  config.epochs = 5;
  LinearModel a = train_logreg(X, y, 2, config);
  LinearModel b = train_logreg(X, y, 2, config);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
}

TEST_CASE("stored models round-trip bit-exactly") {
  namespace fs = std::filesystem;
  std::vector<SparseVector> X;
  std::vector<int> y;
  separable_toy(X, y);
  LogRegConfig config;
  config.epochs = 8;
  StoredLinearModel stored;
  stored.kind = "dist-logreg";
  stored.model = train_logreg(X, y, 2, config);
  stored.dist_method = "concat";
  stored.embeddings_path = "embeddings.txt";

  fs::path file = fs::temp_directory_path() / "hype_linear_model_test.json";
  save_linear_model_file(stored, file.string());
  StoredLinearModel back = load_linear_model_file(file.string());
  CHECK(back.kind == stored.kind);
  CHECK(back.model.weights == stored.model.weights);
  CHECK(back.model.bias == stored.model.bias);
  CHECK(back.dist_method == "concat");
  for (const SparseVector& v : X)
    CHECK(predict_logreg(back.model, v) == predict_logreg(stored.model, v));
  fs::remove(file);
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(train_logreg({}, {}, 2, {}), std::invalid_argument);
  LinearModel model;
  model.weights = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(logreg_loss(model, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(regularization_from_string("l3"), std::invalid_argument);
}
