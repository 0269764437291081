#include "hype/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "hype/metrics.hpp"
#include "hype/util.hpp"

namespace hype::network {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

Mode mode_from_string(const std::string& name) {
  if (name == "path" || name == "path-only") return Mode::PathOnly;
  if (name == "integrated") return Mode::Integrated;
  throw std::invalid_argument("unknown network mode: " + name);
}

std::string to_string(Mode mode) { return mode == Mode::PathOnly ? "path" : "integrated"; }

namespace {

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1) with 53 bits
}

double uniform_draw(std::mt19937_64& rng, double half_range) {
  return (2.0 * unit_draw(rng) - 1.0) * half_range;
}

void fill_uniform(MatrixXd& m, std::mt19937_64& rng, double half_range = 0.1) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = uniform_draw(rng, half_range);
}

void fill_uniform(VectorXd& v, std::mt19937_64& rng, double half_range = 0.1) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform_draw(rng, half_range);
}

}  // namespace

int EmbeddingTable::row_of(const std::string& word) const {
  auto it = row_ids.find(word);
  return it == row_ids.end() ? 0 : it->second;
}

EmbeddingTable EmbeddingTable::seeded(std::vector<std::string> vocab, int dim, std::mt19937_64& rng) {
  EmbeddingTable table;
  table.words = std::move(vocab);
  table.rows.resize(static_cast<Eigen::Index>(table.words.size()) + 1, dim);
  fill_uniform(table.rows, rng);
  for (std::size_t i = 0; i < table.words.size(); ++i)
    table.row_ids.emplace(table.words[i], static_cast<int>(i) + 1);
  return table;
}

std::vector<ParamView> param_views(NetworkParams& params) {
  std::vector<ParamView> views{
      {"lemma_table", params.lemma.rows.data(), params.lemma.rows.size()},
      {"pos_table", params.pos.rows.data(), params.pos.rows.size()},
      {"dep_table", params.dep.rows.data(), params.dep.rows.size()},
      {"dir_table", params.dir.rows.data(), params.dir.rows.size()},
  };
  if (params.mode == Mode::Integrated)
    views.push_back({"word_table", params.word.rows.data(), params.word.rows.size()});
  LstmWeights& l = params.lstm;
  views.insert(views.end(), {
                                {"lstm_wi", l.wi.data(), l.wi.size()},
                                {"lstm_wf", l.wf.data(), l.wf.size()},
                                {"lstm_wo", l.wo.data(), l.wo.size()},
                                {"lstm_wc", l.wc.data(), l.wc.size()},
                                {"lstm_ui", l.ui.data(), l.ui.size()},
                                {"lstm_uf", l.uf.data(), l.uf.size()},
                                {"lstm_uo", l.uo.data(), l.uo.size()},
                                {"lstm_uc", l.uc.data(), l.uc.size()},
                                {"lstm_bi", l.bi.data(), l.bi.size()},
                                {"lstm_bf", l.bf.data(), l.bf.size()},
                                {"lstm_bo", l.bo.data(), l.bo.size()},
                                {"lstm_bc", l.bc.data(), l.bc.size()},
                                {"classifier", params.classifier.data(), params.classifier.size()},
                            });
  return views;
}

NetworkGrads make_grads(const NetworkParams& params) {
  NetworkGrads g;
  g.lemma = MatrixXd::Zero(params.lemma.rows.rows(), params.lemma.rows.cols());
  g.pos = MatrixXd::Zero(params.pos.rows.rows(), params.pos.rows.cols());
  g.dep = MatrixXd::Zero(params.dep.rows.rows(), params.dep.rows.cols());
  g.dir = MatrixXd::Zero(params.dir.rows.rows(), params.dir.rows.cols());
  if (params.mode == Mode::Integrated)
    g.word = MatrixXd::Zero(params.word.rows.rows(), params.word.rows.cols());
  auto zero_like_m = [](const MatrixXd& m) { return MatrixXd::Zero(m.rows(), m.cols()).eval(); };
  auto zero_like_v = [](const VectorXd& v) { return VectorXd::Zero(v.size()).eval(); };
  g.lstm.wi = zero_like_m(params.lstm.wi);
  g.lstm.wf = zero_like_m(params.lstm.wf);
  g.lstm.wo = zero_like_m(params.lstm.wo);
  g.lstm.wc = zero_like_m(params.lstm.wc);
  g.lstm.ui = zero_like_m(params.lstm.ui);
  g.lstm.uf = zero_like_m(params.lstm.uf);
  g.lstm.uo = zero_like_m(params.lstm.uo);
  g.lstm.uc = zero_like_m(params.lstm.uc);
  g.lstm.bi = zero_like_v(params.lstm.bi);
  g.lstm.bf = zero_like_v(params.lstm.bf);
  g.lstm.bo = zero_like_v(params.lstm.bo);
  g.lstm.bc = zero_like_v(params.lstm.bc);
  g.classifier = zero_like_m(params.classifier);
  return g;
}

void set_zero(NetworkGrads& g) {
  g.lemma.setZero();
  g.pos.setZero();
  g.dep.setZero();
  g.dir.setZero();
  if (g.word.size() > 0) g.word.setZero();
  g.lstm.wi.setZero();
  g.lstm.wf.setZero();
  g.lstm.wo.setZero();
  g.lstm.wc.setZero();
  g.lstm.ui.setZero();
  g.lstm.uf.setZero();
  g.lstm.uo.setZero();
  g.lstm.uc.setZero();
  g.lstm.bi.setZero();
  g.lstm.bf.setZero();
  g.lstm.bo.setZero();
  g.lstm.bc.setZero();
  g.classifier.setZero();
}

std::vector<ParamView> grad_views(NetworkGrads& g) {
  std::vector<ParamView> views{
      {"lemma_table", g.lemma.data(), g.lemma.size()},
      {"pos_table", g.pos.data(), g.pos.size()},
      {"dep_table", g.dep.data(), g.dep.size()},
      {"dir_table", g.dir.data(), g.dir.size()},
  };
  if (g.word.size() > 0) views.push_back({"word_table", g.word.data(), g.word.size()});
  views.insert(views.end(), {
                                {"lstm_wi", g.lstm.wi.data(), g.lstm.wi.size()},
                                {"lstm_wf", g.lstm.wf.data(), g.lstm.wf.size()},
                                {"lstm_wo", g.lstm.wo.data(), g.lstm.wo.size()},
                                {"lstm_wc", g.lstm.wc.data(), g.lstm.wc.size()},
                                {"lstm_ui", g.lstm.ui.data(), g.lstm.ui.size()},
                                {"lstm_uf", g.lstm.uf.data(), g.lstm.uf.size()},
                                {"lstm_uo", g.lstm.uo.data(), g.lstm.uo.size()},
                                {"lstm_uc", g.lstm.uc.data(), g.lstm.uc.size()},
                                {"lstm_bi", g.lstm.bi.data(), g.lstm.bi.size()},
                                {"lstm_bf", g.lstm.bf.data(), g.lstm.bf.size()},
                                {"lstm_bo", g.lstm.bo.data(), g.lstm.bo.size()},
                                {"lstm_bc", g.lstm.bc.data(), g.lstm.bc.size()},
                                {"classifier", g.classifier.data(), g.classifier.size()},
                            });
  return views;
}

EncodedPath encode_path(const NetworkParams& params, const corpus::DepPath& path, double count) {
  EncodedPath encoded;
  encoded.count = count;
  encoded.edges.reserve(path.edges.size());
  for (const corpus::PathEdge& edge : path.edges) {
    EncodedEdge e{0, 0, 0, 0};
    if (edge.shape == corpus::EdgeShape::Full) {
      e.lemma_row = params.lemma.row_of(edge.lemma);
      e.pos_row = params.pos.row_of(edge.pos);
      e.dep_row = params.dep.row_of(edge.dep);
      e.dir_row = params.dir.row_of(std::string(1, corpus::dir_char(edge.dir)));
    } else if (edge.shape == corpus::EdgeShape::PosOnly) {
      e.pos_row = params.pos.row_of(edge.pos);
    }
    encoded.edges.push_back(e);
  }
  return encoded;
}

EncodedInstance encode_instance(const NetworkParams& params, const dataset::LabeledInstance& instance) {
  EncodedInstance encoded;
  encoded.label = instance.label;
  for (const auto& [path, count] : instance.paths)
    encoded.paths.push_back(
        encode_path(params, corpus::DepPath::parse(path), static_cast<double>(count)));
  if (params.mode == Mode::Integrated) {
    encoded.x_row = params.word.row_of(instance.x);
    encoded.y_row = params.word.row_of(instance.y);
  }
  return encoded;
}

namespace {

// x_t = [v_l, v_pos, v_dep, v_dir], with train-time component dropout.
VectorXd assemble_edge_input(const NetworkParams& params, const EncodedEdge& edge,
                             const std::array<bool, 4>& dropped) {
  VectorXd x(params.edge_input_dim());
  Eigen::Index offset = 0;
  const EmbeddingTable* tables[4] = {&params.lemma, &params.pos, &params.dep, &params.dir};
  const int rows[4] = {edge.lemma_row, edge.pos_row, edge.dep_row, edge.dir_row};
  for (int comp = 0; comp < 4; ++comp) {
    const Eigen::Index dim = tables[comp]->dim();
    if (dropped[static_cast<std::size_t>(comp)])
      x.segment(offset, dim).setZero();
    else
      x.segment(offset, dim) = tables[comp]->rows.row(rows[comp]).transpose();
    offset += dim;
  }
  return x;
}

struct LstmStep {
  VectorXd x, i, f, o, g, c, tanh_c, h;
};

struct PathTrace {
  std::vector<LstmStep> steps;
  std::vector<std::array<bool, 4>> masks;
  double count = 1.0;
};

double sigmoid_scalar(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void lstm_run(const NetworkParams& params, PathTrace& trace) {
  const LstmWeights& l = params.lstm;
  const int h_dim = params.hidden();
  VectorXd h_prev = VectorXd::Zero(h_dim);
  VectorXd c_prev = VectorXd::Zero(h_dim);
  auto sigmoid = [](double z) { return sigmoid_scalar(z); };
  for (LstmStep& step : trace.steps) {
    step.i = (l.wi * step.x + l.ui * h_prev + l.bi).unaryExpr(sigmoid);
    step.f = (l.wf * step.x + l.uf * h_prev + l.bf).unaryExpr(sigmoid);
    step.o = (l.wo * step.x + l.uo * h_prev + l.bo).unaryExpr(sigmoid);
    step.g = (l.wc * step.x + l.uc * h_prev + l.bc).array().tanh().matrix();
    step.c = step.f.cwiseProduct(c_prev) + step.i.cwiseProduct(step.g);
    step.tanh_c = step.c.array().tanh().matrix();
    step.h = step.o.cwiseProduct(step.tanh_c);
    h_prev = step.h;
    c_prev = step.c;
  }
}

// Backpropagation through one path; d_h_last arrives at the final hidden
// state. Embedding-row gradients respect the forward dropout masks.
void lstm_backward(const NetworkParams& params, const PathTrace& trace,
                   const std::vector<EncodedEdge>& edges, const VectorXd& d_h_last,
                   NetworkGrads& grads) {
  const LstmWeights& l = params.lstm;
  const int h_dim = params.hidden();
  const std::size_t k = trace.steps.size();
  VectorXd dh_next = d_h_last;
  VectorXd dc_next = VectorXd::Zero(h_dim);
  const VectorXd zero_state = VectorXd::Zero(h_dim);
  for (std::size_t t = k; t-- > 0;) {
    const LstmStep& step = trace.steps[t];
    const VectorXd& h_prev = t == 0 ? zero_state : trace.steps[t - 1].h;
    const VectorXd& c_prev = t == 0 ? zero_state : trace.steps[t - 1].c;

    const VectorXd& dh = dh_next;
    VectorXd d_o = dh.cwiseProduct(step.tanh_c);
    VectorXd da_o = d_o.cwiseProduct(step.o).cwiseProduct(VectorXd::Ones(h_dim) - step.o);
    VectorXd dc = dc_next + dh.cwiseProduct(step.o).cwiseProduct(
                                (VectorXd::Ones(h_dim) - step.tanh_c.cwiseProduct(step.tanh_c)));
    VectorXd d_i = dc.cwiseProduct(step.g);
    VectorXd da_i = d_i.cwiseProduct(step.i).cwiseProduct(VectorXd::Ones(h_dim) - step.i);
    VectorXd d_f = dc.cwiseProduct(c_prev);
    VectorXd da_f = d_f.cwiseProduct(step.f).cwiseProduct(VectorXd::Ones(h_dim) - step.f);
    VectorXd d_g = dc.cwiseProduct(step.i);
    VectorXd da_g = d_g.cwiseProduct(VectorXd::Ones(h_dim) - step.g.cwiseProduct(step.g));

    grads.lstm.wi.noalias() += da_i * step.x.transpose();
    grads.lstm.wf.noalias() += da_f * step.x.transpose();
    grads.lstm.wo.noalias() += da_o * step.x.transpose();
    grads.lstm.wc.noalias() += da_g * step.x.transpose();
    grads.lstm.ui.noalias() += da_i * h_prev.transpose();
    grads.lstm.uf.noalias() += da_f * h_prev.transpose();
    grads.lstm.uo.noalias() += da_o * h_prev.transpose();
    grads.lstm.uc.noalias() += da_g * h_prev.transpose();
    grads.lstm.bi += da_i;
    grads.lstm.bf += da_f;
    grads.lstm.bo += da_o;
    grads.lstm.bc += da_g;

    VectorXd dx = l.wi.transpose() * da_i + l.wf.transpose() * da_f + l.wo.transpose() * da_o +
                  l.wc.transpose() * da_g;
    const std::array<bool, 4>& dropped = trace.masks[t];
    const EncodedEdge& edge = edges[t];
    MatrixXd* tables[4] = {&grads.lemma, &grads.pos, &grads.dep, &grads.dir};
    const int rows[4] = {edge.lemma_row, edge.pos_row, edge.dep_row, edge.dir_row};
    const Eigen::Index dims[4] = {grads.lemma.cols(), grads.pos.cols(), grads.dep.cols(),
                                  grads.dir.cols()};
    Eigen::Index offset = 0;
    for (int comp = 0; comp < 4; ++comp) {
      if (!dropped[static_cast<std::size_t>(comp)])
        tables[comp]->row(rows[comp]) += dx.segment(offset, dims[comp]).transpose();
      offset += dims[comp];
    }

    dh_next = l.ui.transpose() * da_i + l.uf.transpose() * da_f + l.uo.transpose() * da_o +
              l.uc.transpose() * da_g;
    dc_next = dc.cwiseProduct(step.f);
  }
}

// Two-class softmax via the sigmoid of the logit difference; exact [0.5, 0.5]
// for equal scores.
Eigen::Vector2d softmax2(double z0, double z1) {
  const double p1 = sigmoid_scalar(z1 - z0);
  return {1.0 - p1, p1};
}

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

Eigen::VectorXd embed_edge(const NetworkParams& params, const corpus::PathEdge& edge, double dropout,
                           std::mt19937_64* rng) {
  std::array<bool, 4> dropped{false, false, false, false};
  if (dropout > 0.0 && rng != nullptr)
    for (bool& flag : dropped) flag = unit_draw(*rng) < dropout;
  EncodedPath encoded = encode_path(params, corpus::DepPath{{edge}, false});
  return assemble_edge_input(params, encoded.edges.front(), dropped);
}

Eigen::VectorXd lstm_forward(const NetworkParams& params, const std::vector<VectorXd>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("lstm_forward: empty input sequence");
  PathTrace trace;
  trace.steps.resize(inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    if (inputs[t].size() != params.edge_input_dim())
      throw std::invalid_argument("lstm_forward: input dimension mismatch");
    trace.steps[t].x = inputs[t];
  }
  lstm_run(params, trace);
  return trace.steps.back().h;
}

Eigen::VectorXd pool_paths(const std::vector<std::pair<VectorXd, double>>& paths, int dim) {
  if (paths.empty()) return VectorXd::Zero(dim);
  if (paths.size() == 1) return paths.front().first;
  VectorXd sum = VectorXd::Zero(dim);
  double total = 0.0;
  for (const auto& [vec, count] : paths) {
    sum += count * vec;
    total += count;
  }
  return sum / total;
}

Eigen::VectorXd build_feature(const NetworkParams& params, const VectorXd& v_paths, int x_row,
                              int y_row) {
  if (params.mode == Mode::PathOnly) return v_paths;
  const Eigen::Index d_w = params.word.dim();
  VectorXd v(2 * d_w + v_paths.size());
  v << params.word.rows.row(x_row).transpose(), v_paths, params.word.rows.row(y_row).transpose();
  return v;
}

Eigen::Vector2d classify(const MatrixXd& classifier, const VectorXd& v_xy) {
  if (classifier.rows() != 2 || classifier.cols() != v_xy.size())
    throw std::invalid_argument("classify: classifier shape does not match the feature vector");
  Eigen::Vector2d z = classifier * v_xy;
  return softmax2(z[0], z[1]);
}

Eigen::VectorXd path_vector(const NetworkParams& params, const EncodedPath& path) {
  if (path.edges.empty()) throw std::invalid_argument("path_vector: empty path");
  PathTrace trace;
  trace.steps.resize(path.edges.size());
  trace.masks.assign(path.edges.size(), {false, false, false, false});
  for (std::size_t t = 0; t < path.edges.size(); ++t)
    trace.steps[t].x = assemble_edge_input(params, path.edges[t], trace.masks[t]);
  lstm_run(params, trace);
  return trace.steps.back().h;
}

PairPrediction predict(const NetworkParams& params, const EncodedInstance& instance) {
  std::vector<std::pair<VectorXd, double>> vectors;
  vectors.reserve(instance.paths.size());
  for (const EncodedPath& path : instance.paths)
    vectors.emplace_back(path_vector(params, path), path.count);
  VectorXd v_paths = pool_paths(vectors, params.hidden());
  VectorXd v_xy = build_feature(params, v_paths, instance.x_row, instance.y_row);
  PairPrediction out;
  out.empty_paths = instance.paths.empty();
  out.probability = classify(params.classifier, v_xy)[1];
  return out;
}

PairPrediction predict_pair(const NetworkParams& params, const dataset::LabeledInstance& instance) {
  return predict(params, encode_instance(params, instance));
}

double loss_and_gradients(const std::vector<EncodedInstance>& batch, const NetworkParams& params,
                          NetworkGrads& grads, double dropout, std::mt19937_64* rng) {
  if (batch.empty()) throw std::invalid_argument("loss_and_gradients: empty batch");
  set_zero(grads);
  const int h_dim = params.hidden();
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;

  for (const EncodedInstance& instance : batch) {
    // Forward, keeping per-path traces for the backward pass.
    std::vector<PathTrace> traces(instance.paths.size());
    double total_count = 0.0;
    for (std::size_t p = 0; p < instance.paths.size(); ++p) {
      const EncodedPath& path = instance.paths[p];
      PathTrace& trace = traces[p];
      trace.count = path.count;
      total_count += path.count;
      trace.steps.resize(path.edges.size());
      trace.masks.assign(path.edges.size(), {false, false, false, false});
      if (dropout > 0.0 && rng != nullptr)
        for (auto& mask : trace.masks)
          for (bool& flag : mask) flag = unit_draw(*rng) < dropout;
      for (std::size_t t = 0; t < path.edges.size(); ++t)
        trace.steps[t].x = assemble_edge_input(params, path.edges[t], trace.masks[t]);
      lstm_run(params, trace);
    }

    std::vector<std::pair<VectorXd, double>> vectors;
    vectors.reserve(traces.size());
    for (const PathTrace& trace : traces) vectors.emplace_back(trace.steps.back().h, trace.count);
    VectorXd v_paths = pool_paths(vectors, h_dim);
    VectorXd v_xy = build_feature(params, v_paths, instance.x_row, instance.y_row);

    Eigen::Vector2d z = params.classifier * v_xy;
    const int label = instance.label ? 1 : 0;
    // loss = log(exp(z0) + exp(z1)) - z[label], in stable form
    loss_sum += softplus(z[1 - label] - z[label]);

    Eigen::Vector2d dz = softmax2(z[0], z[1]);
    dz[label] -= 1.0;
    dz *= scale;

    grads.classifier.noalias() += dz * v_xy.transpose();
    VectorXd dv_xy = params.classifier.transpose() * dz;

    VectorXd dv_paths;
    if (params.mode == Mode::Integrated) {
      const Eigen::Index d_w = params.word.dim();
      grads.word.row(instance.x_row) += dv_xy.segment(0, d_w).transpose();
      grads.word.row(instance.y_row) += dv_xy.segment(d_w + h_dim, d_w).transpose();
      dv_paths = dv_xy.segment(d_w, h_dim);
    } else {
      dv_paths = dv_xy;
    }

    if (instance.paths.empty()) continue;  // zero-vector fallback has no path gradient
    for (std::size_t p = 0; p < instance.paths.size(); ++p) {
      VectorXd d_h_last = (traces[p].count / total_count) * dv_paths;
      lstm_backward(params, traces[p], instance.paths[p].edges, d_h_last, grads);
    }
  }
  return loss_sum * scale;
}

double batch_loss(const std::vector<EncodedInstance>& batch, const NetworkParams& params) {
  if (batch.empty()) throw std::invalid_argument("batch_loss: empty batch");
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss_sum = 0.0;
  for (const EncodedInstance& instance : batch) {
    std::vector<std::pair<VectorXd, double>> vectors;
    vectors.reserve(instance.paths.size());
    for (const EncodedPath& path : instance.paths)
      vectors.emplace_back(path_vector(params, path), path.count);
    VectorXd v_paths = pool_paths(vectors, params.hidden());
    VectorXd v_xy = build_feature(params, v_paths, instance.x_row, instance.y_row);
    Eigen::Vector2d z = params.classifier * v_xy;
    const int label = instance.label ? 1 : 0;
    loss_sum += softplus(z[1 - label] - z[label]);
  }
  return loss_sum * scale;
}

void adam_step(NetworkParams& params, const NetworkGrads& grads, AdamState& state, double lr,
               const AdamConfig& config) {
  std::vector<ParamView> p_views = param_views(params);
  NetworkGrads& g = const_cast<NetworkGrads&>(grads);  // views only read through const data
  std::vector<ParamView> g_views = grad_views(g);
  if (p_views.size() != g_views.size())
    throw std::invalid_argument("adam_step: parameter and gradient groups differ");
  if (state.m.empty()) {
    state.m.resize(p_views.size());
    state.v.resize(p_views.size());
    for (std::size_t i = 0; i < p_views.size(); ++i) {
      state.m[i] = VectorXd::Zero(p_views[i].size);
      state.v[i] = VectorXd::Zero(p_views[i].size);
    }
  }
  ++state.step;
  const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < p_views.size(); ++i) {
    if (state.m[i].size() != p_views[i].size)
      throw std::invalid_argument("adam_step: state shape mismatch for " +
                                  std::string(p_views[i].name));
    double* theta = p_views[i].data;
    const double* grad = g_views[i].data;
    VectorXd& m = state.m[i];
    VectorXd& v = state.v[i];
    for (std::ptrdiff_t j = 0; j < p_views[i].size; ++j) {
      m[j] = config.beta1 * m[j] + (1.0 - config.beta1) * grad[j];
      v[j] = config.beta2 * v[j] + (1.0 - config.beta2) * grad[j] * grad[j];
      const double m_hat = m[j] / bias1;
      const double v_hat = v[j] / bias2;
      theta[j] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
  }
}

namespace {

struct SplitVocab {
  std::vector<std::string> lemmas, poses, deps, dirs, terms;
};

SplitVocab collect_vocab(const dataset::DatasetSplit& split) {
  std::set<std::string> lemmas, poses, deps, dirs, terms;
  auto visit = [&](const std::vector<dataset::LabeledInstance>& instances) {
    for (const dataset::LabeledInstance& inst : instances) {
      terms.insert(inst.x);
      terms.insert(inst.y);
      for (const auto& [path, count] : inst.paths) {
        corpus::DepPath parsed = corpus::DepPath::parse(path);
        for (const corpus::PathEdge& edge : parsed.edges) {
          if (edge.shape != corpus::EdgeShape::Full) continue;
          lemmas.insert(edge.lemma);
          poses.insert(edge.pos);
          deps.insert(edge.dep);
          dirs.insert(std::string(1, corpus::dir_char(edge.dir)));
        }
      }
    }
  };
  visit(split.train);
  visit(split.validation);
  visit(split.test);
  return {{lemmas.begin(), lemmas.end()},
          {poses.begin(), poses.end()},
          {deps.begin(), deps.end()},
          {dirs.begin(), dirs.end()},
          {terms.begin(), terms.end()}};
}

void overlay_pretrained(EmbeddingTable& table, const baselines::WordEmbeddings& pretrained) {
  for (std::size_t i = 0; i < table.words.size(); ++i)
    if (const VectorXd* vec = pretrained.find(table.words[i]))
      table.rows.row(static_cast<Eigen::Index>(i) + 1) = vec->transpose();
}

}  // namespace

TrainResult train(const dataset::DatasetSplit& split, const TrainConfig& config,
                  const baselines::WordEmbeddings* pretrained) {
  if (split.train.empty() || split.validation.empty())
    throw std::invalid_argument("train: training and validation sets must be non-empty");
  if (config.mode == Mode::Integrated && pretrained == nullptr)
    throw std::invalid_argument("train: integrated mode requires a word-embeddings file");
  if (config.dropout < 0.0 || config.dropout >= 1.0)
    throw std::invalid_argument("train: dropout must be in [0, 1)");
  if (config.minibatch_size < 1) throw std::invalid_argument("train: minibatch size must be positive");
  if (config.epochs < 1) throw std::invalid_argument("train: epoch count must be positive");

  std::mt19937_64 rng(config.seed);
  SplitVocab vocab = collect_vocab(split);

  NetworkParams params;
  params.mode = config.mode;
  const int lemma_dim = pretrained ? pretrained->dim : config.lemma_dim;
  params.lemma = EmbeddingTable::seeded(vocab.lemmas, lemma_dim, rng);
  if (pretrained) overlay_pretrained(params.lemma, *pretrained);
  params.pos = EmbeddingTable::seeded(vocab.poses, config.pos_dim, rng);
  params.dep = EmbeddingTable::seeded(vocab.deps, config.dep_dim, rng);
  params.dir = EmbeddingTable::seeded(vocab.dirs, config.dir_dim, rng);
  if (config.mode == Mode::Integrated) {
    params.word = EmbeddingTable::seeded(vocab.terms, pretrained->dim, rng);
    overlay_pretrained(params.word, *pretrained);
  }

  const int h = config.hidden_dim;
  const int in = lemma_dim + config.pos_dim + config.dep_dim + config.dir_dim;
  auto init_m = [&](int r, int c) {
    MatrixXd m(r, c);
    fill_uniform(m, rng);
    return m;
  };
  auto init_v = [&](int n) {
    VectorXd v(n);
    fill_uniform(v, rng);
    return v;
  };
  params.lstm.wi = init_m(h, in);
  params.lstm.wf = init_m(h, in);
  params.lstm.wo = init_m(h, in);
  params.lstm.wc = init_m(h, in);
  params.lstm.ui = init_m(h, h);
  params.lstm.uf = init_m(h, h);
  params.lstm.uo = init_m(h, h);
  params.lstm.uc = init_m(h, h);
  params.lstm.bi = init_v(h);
  params.lstm.bf = init_v(h);
  params.lstm.bo = init_v(h);
  params.lstm.bc = init_v(h);
  const int feature_dim = config.mode == Mode::Integrated ? h + 2 * pretrained->dim : h;
  params.classifier = init_m(2, feature_dim);

  std::vector<EncodedInstance> train_set;
  train_set.reserve(split.train.size());
  for (const dataset::LabeledInstance& inst : split.train)
    train_set.push_back(encode_instance(params, inst));
  std::vector<EncodedInstance> val_set;
  val_set.reserve(split.validation.size());
  for (const dataset::LabeledInstance& inst : split.validation)
    val_set.push_back(encode_instance(params, inst));

  NetworkGrads grads = make_grads(params);
  AdamState adam;
  TrainResult result;
  double best_f1 = -1.0;

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    util::shuffle(order, rng);
    double epoch_loss = 0.0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.minibatch_size)) {
      std::vector<EncodedInstance> batch;
      for (std::size_t i = start;
           i < std::min(order.size(), start + static_cast<std::size_t>(config.minibatch_size)); ++i)
        batch.push_back(train_set[order[i]]);
      double loss = loss_and_gradients(batch, params, grads, config.dropout,
                                       config.dropout > 0.0 ? &rng : nullptr);
      epoch_loss += loss * static_cast<double>(batch.size());
      seen += batch.size();
      adam_step(params, grads, adam, config.learning_rate);
    }

    std::vector<int> predicted, gold;
    predicted.reserve(val_set.size());
    gold.reserve(val_set.size());
    for (const EncodedInstance& inst : val_set) {
      predicted.push_back(predict(params, inst).probability > 0.5 ? 1 : 0);
      gold.push_back(inst.label ? 1 : 0);
    }
    analysis::Metrics metrics = analysis::evaluate(predicted, gold);

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss / static_cast<double>(seen);
    stats.val_precision = metrics.precision;
    stats.val_recall = metrics.recall;
    stats.val_f1 = metrics.f1;
    result.history.push_back(stats);

    // Ties keep the later epoch: equally scoring snapshots with more
    // training tend to carry better-calibrated scores.
    if (metrics.f1 >= best_f1) {
      best_f1 = metrics.f1;
      result.params = params;
    }
  }
  return result;
}

namespace {

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const json& j) {
  const auto n_rows = static_cast<Eigen::Index>(j.size());
  if (n_rows == 0) return MatrixXd(0, 0);
  const auto n_cols = static_cast<Eigen::Index>(j.at(0).size());
  MatrixXd m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != n_cols)
      throw std::runtime_error("checkpoint matrix is ragged");
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

json vector_to_json(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

VectorXd vector_from_json(const json& j) {
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

json table_to_json(const EmbeddingTable& table) {
  return {{"words", table.words}, {"rows", matrix_to_json(table.rows)}};
}

EmbeddingTable table_from_json(const json& j) {
  EmbeddingTable table;
  table.words = j.at("words").get<std::vector<std::string>>();
  table.rows = matrix_from_json(j.at("rows"));
  if (table.rows.rows() != static_cast<Eigen::Index>(table.words.size()) + 1)
    throw std::runtime_error("checkpoint table has inconsistent row count");
  for (std::size_t i = 0; i < table.words.size(); ++i)
    table.row_ids.emplace(table.words[i], static_cast<int>(i) + 1);
  return table;
}

}  // namespace

void save_checkpoint_file(const Checkpoint& checkpoint, const std::string& path) {
  const NetworkParams& p = checkpoint.params;
  json j;
  j["format_version"] = 1;
  j["kind"] = "hypenet";
  j["mode"] = to_string(p.mode);
  j["config"] = {{"learning_rate", checkpoint.config.learning_rate},
                 {"dropout", checkpoint.config.dropout},
                 {"minibatch_size", checkpoint.config.minibatch_size},
                 {"epochs", checkpoint.config.epochs},
                 {"seed", checkpoint.config.seed},
                 {"hidden_dim", checkpoint.config.hidden_dim}};
  j["tables"] = {{"lemma", table_to_json(p.lemma)},
                 {"pos", table_to_json(p.pos)},
                 {"dep", table_to_json(p.dep)},
                 {"dir", table_to_json(p.dir)}};
  if (p.mode == Mode::Integrated) j["tables"]["word"] = table_to_json(p.word);
  j["lstm"] = {{"wi", matrix_to_json(p.lstm.wi)}, {"wf", matrix_to_json(p.lstm.wf)},
               {"wo", matrix_to_json(p.lstm.wo)}, {"wc", matrix_to_json(p.lstm.wc)},
               {"ui", matrix_to_json(p.lstm.ui)}, {"uf", matrix_to_json(p.lstm.uf)},
               {"uo", matrix_to_json(p.lstm.uo)}, {"uc", matrix_to_json(p.lstm.uc)},
               {"bi", vector_to_json(p.lstm.bi)}, {"bf", vector_to_json(p.lstm.bf)},
               {"bo", vector_to_json(p.lstm.bo)}, {"bc", vector_to_json(p.lstm.bc)}};
  j["classifier"] = matrix_to_json(p.classifier);
  util::atomic_write_file(path, j.dump() + "\n");
}

Checkpoint load_checkpoint_file(const std::string& path) {
  json j = json::parse(util::read_file(path));
  if (j.value("format_version", 0) != 1 || j.value("kind", "") != "hypenet")
    throw std::runtime_error("not a version-1 hypenet checkpoint: " + path);
  Checkpoint out;
  NetworkParams& p = out.params;
  p.mode = mode_from_string(j.at("mode").get<std::string>());
  const json& config = j.at("config");
  out.config.mode = p.mode;
  out.config.learning_rate = config.at("learning_rate").get<double>();
  out.config.dropout = config.at("dropout").get<double>();
  out.config.minibatch_size = config.at("minibatch_size").get<int>();
  out.config.epochs = config.at("epochs").get<int>();
  out.config.seed = config.at("seed").get<std::uint64_t>();
  out.config.hidden_dim = config.at("hidden_dim").get<int>();
  const json& tables = j.at("tables");
  p.lemma = table_from_json(tables.at("lemma"));
  p.pos = table_from_json(tables.at("pos"));
  p.dep = table_from_json(tables.at("dep"));
  p.dir = table_from_json(tables.at("dir"));
  if (p.mode == Mode::Integrated) p.word = table_from_json(tables.at("word"));
  const json& lstm = j.at("lstm");
  p.lstm.wi = matrix_from_json(lstm.at("wi"));
  p.lstm.wf = matrix_from_json(lstm.at("wf"));
  p.lstm.wo = matrix_from_json(lstm.at("wo"));
  p.lstm.wc = matrix_from_json(lstm.at("wc"));
  p.lstm.ui = matrix_from_json(lstm.at("ui"));
  p.lstm.uf = matrix_from_json(lstm.at("uf"));
  p.lstm.uo = matrix_from_json(lstm.at("uo"));
  p.lstm.uc = matrix_from_json(lstm.at("uc"));
  p.lstm.bi = vector_from_json(lstm.at("bi"));
  p.lstm.bf = vector_from_json(lstm.at("bf"));
  p.lstm.bo = vector_from_json(lstm.at("bo"));
  p.lstm.bc = vector_from_json(lstm.at("bc"));
  p.classifier = matrix_from_json(j.at("classifier"));
  return out;
}

}  // namespace hype::network
