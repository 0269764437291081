// The neural pair classifier: lemma/POS/dep/direction edge embeddings, an
// LSTM over each dependency path, frequency-weighted average pooling across
// the pair's path multiset, and a two-way softmax. In integrated mode the
// two terms' word embeddings are concatenated around the pooled path vector.
// Training uses minibatch Adam with component-level embedding dropout and
// exact analytic gradients throughout; everything is 64-bit and fully
// deterministic for a fixed seed.
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "hype/dataset.hpp"
#include "hype/dep_path.hpp"
#include "hype/embeddings.hpp"

namespace hype::network {

enum class Mode { PathOnly, Integrated };

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

struct EmbeddingTable {
  std::vector<std::string> words;                    // row i+1 holds words[i]
  std::unordered_map<std::string, int> row_ids;
  Eigen::MatrixXd rows;                              // (words+1) x dim; row 0 = unknown

  int dim() const { return static_cast<int>(rows.cols()); }
  int row_count() const { return static_cast<int>(rows.rows()); }
  int row_of(const std::string& word) const;

  // All rows uniform in [-0.1, 0.1].
  static EmbeddingTable seeded(std::vector<std::string> vocab, int dim, std::mt19937_64& rng);
};

struct LstmWeights {
  Eigen::MatrixXd wi, wf, wo, wc;  // hidden x input
  Eigen::MatrixXd ui, uf, uo, uc;  // hidden x hidden
  Eigen::VectorXd bi, bf, bo, bc;
};

struct NetworkParams {
  Mode mode = Mode::PathOnly;
  EmbeddingTable lemma, pos, dep, dir;
  EmbeddingTable word;  // integrated mode only (0 x 0 otherwise)
  LstmWeights lstm;
  Eigen::MatrixXd classifier;  // 2 x feature_dim

  int hidden() const { return static_cast<int>(lstm.bi.size()); }
  int edge_input_dim() const { return lemma.dim() + pos.dim() + dep.dim() + dir.dim(); }
  int feature_dim() const { return static_cast<int>(classifier.cols()); }
};

// Flat named access to every parameter group, in a fixed order shared with
// the gradient struct; drives both Adam and the finite-difference checks.
struct ParamView {
  const char* name;
  double* data;
  std::ptrdiff_t size;
};

std::vector<ParamView> param_views(NetworkParams& params);

struct NetworkGrads {
  Eigen::MatrixXd lemma, pos, dep, dir, word;
  LstmWeights lstm;
  Eigen::MatrixXd classifier;
};

NetworkGrads make_grads(const NetworkParams& params);
void set_zero(NetworkGrads& grads);
std::vector<ParamView> grad_views(NetworkGrads& grads);

struct TrainConfig {
  Mode mode = Mode::PathOnly;
  double learning_rate = 0.001;
  double dropout = 0.5;       // per-component embedding dropout, no rescaling
  int minibatch_size = 10;
  int epochs = 3;
  std::uint64_t seed = 1;
  int lemma_dim = 50;         // when no pretrained embeddings are given
  int pos_dim = 4;
  int dep_dim = 5;
  int dir_dim = 1;
  int hidden_dim = 60;
};

// Paths pre-resolved to embedding rows (unknown strings map to row 0).
struct EncodedEdge {
  int lemma_row, pos_row, dep_row, dir_row;
};
struct EncodedPath {
  std::vector<EncodedEdge> edges;
  double count = 1.0;
};
struct EncodedInstance {
  std::vector<EncodedPath> paths;
  bool label = false;
  int x_row = 0, y_row = 0;  // word-table rows, integrated mode
};

EncodedPath encode_path(const NetworkParams& params, const corpus::DepPath& path, double count = 1.0);
EncodedInstance encode_instance(const NetworkParams& params, const dataset::LabeledInstance& instance);

// v_e = [v_l, v_pos, v_dep, v_dir]. With a dropout rate and generator, each
// component is independently zeroed (training-time form, no rescaling).
Eigen::VectorXd embed_edge(const NetworkParams& params, const corpus::PathEdge& edge,
                           double dropout = 0.0, std::mt19937_64* rng = nullptr);

// Standard forget-gate LSTM; returns the final hidden state o_p.
Eigen::VectorXd lstm_forward(const NetworkParams& params, const std::vector<Eigen::VectorXd>& inputs);

// Frequency-weighted average of path vectors; an empty multiset pools to the
// zero fallback vector (callers flag that case).
Eigen::VectorXd pool_paths(const std::vector<std::pair<Eigen::VectorXd, double>>& paths, int dim);

// Path-only: v_xy = v_paths. Integrated: v_xy = [v_wx, v_paths, v_wy].
Eigen::VectorXd build_feature(const NetworkParams& params, const Eigen::VectorXd& v_paths,
                              int x_row, int y_row);

// c = softmax(W v_xy); positive iff c[1] > 0.5.
Eigen::Vector2d classify(const Eigen::MatrixXd& classifier, const Eigen::VectorXd& v_xy);

Eigen::VectorXd path_vector(const NetworkParams& params, const EncodedPath& path);

struct PairPrediction {
  double probability = 0.0;  // c[1]
  bool empty_paths = false;
};

PairPrediction predict(const NetworkParams& params, const EncodedInstance& instance);
PairPrediction predict_pair(const NetworkParams& params, const dataset::LabeledInstance& instance);

// Mean cross-entropy over the batch and exact gradients for every parameter
// group, by reverse accumulation. Pass a generator to sample dropout masks;
// without one the forward pass is deterministic.
double loss_and_gradients(const std::vector<EncodedInstance>& batch, const NetworkParams& params,
                          NetworkGrads& grads, double dropout = 0.0, std::mt19937_64* rng = nullptr);

double batch_loss(const std::vector<EncodedInstance>& batch, const NetworkParams& params);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<Eigen::VectorXd> m, v;  // aligned with param_views order
  long step = 0;
};

void adam_step(NetworkParams& params, const NetworkGrads& grads, AdamState& state, double lr,
               const AdamConfig& config = {});

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_precision = 0.0, val_recall = 0.0, val_f1 = 0.0;
};

struct TrainResult {
  NetworkParams params;  // snapshot with the best validation F1
  std::vector<EpochStats> history;
};

// Embedding tables are built over the whole split's vocabulary (training
// only ever updates rows it touches); lemma and word rows take pretrained
// vectors where available, everything else is seeded uniform in [-0.1, 0.1].
// Integrated mode requires the pretrained embeddings.
TrainResult train(const dataset::DatasetSplit& split, const TrainConfig& config,
                  const baselines::WordEmbeddings* pretrained);

struct Checkpoint {
  NetworkParams params;
  TrainConfig config;
};

void save_checkpoint_file(const Checkpoint& checkpoint, const std::string& path);
Checkpoint load_checkpoint_file(const std::string& path);

}  // namespace hype::network
