#include "hype/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hype/conllu.hpp"
#include "hype/dataset.hpp"
#include "hype/embeddings.hpp"
#include "hype/feature_space.hpp"
#include "hype/logreg.hpp"
#include "hype/metrics.hpp"
#include "hype/network.hpp"
#include "hype/path_extract.hpp"
#include "hype/path_score.hpp"
#include "hype/slqs.hpp"
#include "hype/util.hpp"

namespace hype::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_config_json(const json& config, const fs::path& where) {
  json stamped = config;
  stamped["format_version"] = 1;
  util::atomic_write_file(where, stamped.dump(2) + "\n");
}

dataset::SplitFractions parse_fractions(const std::string& spec) {
  std::vector<std::string> parts = util::split(spec, ',');
  if (parts.size() != 3)
    throw std::runtime_error("fractions must be three comma-separated values, e.g. 0.70,0.25,0.05");
  dataset::SplitFractions f;
  f.train = std::stod(parts[0]);
  f.test = std::stod(parts[1]);
  f.validation = std::stod(parts[2]);
  return f;
}

// ---------------------------------------------------------------- extract-paths

struct ExtractOptions {
  std::vector<std::string> corpus;
  std::string vocab;
  std::string out;
};

int run_extract(const ExtractOptions& o) {
  corpus::Vocabulary vocab = corpus::load_vocabulary_file(o.vocab);
  if (vocab.empty()) throw std::runtime_error("vocabulary file contains no terms: " + o.vocab);
  corpus::PairPathIndex index;
  std::size_t sentences = 0, rejected = 0;
  for (const std::string& file : o.corpus) {
    corpus::ParsedCorpus parsed = corpus::parse_conllu_file(file);
    sentences += parsed.sentences.size();
    rejected += parsed.rejected;
    index.merge(corpus::index_corpus(parsed.sentences, vocab));
  }
  index.save_tsv_file(o.out);
  write_config_json({{"command", "extract-paths"},
                     {"corpus", o.corpus},
                     {"vocab", o.vocab},
                     {"out", o.out}},
                    o.out + ".config.json");
  std::cout << "sentences: " << sentences << " (rejected " << rejected << ")\n"
            << "pairs: " << index.pair_count() << "\n"
            << "distinct paths: " << index.distinct_path_count() << "\n";
  return 0;
}

// ---------------------------------------------------------------- build-dataset

struct BuildDatasetOptions {
  std::string relations;
  std::string index;
  std::string split = "random";
  std::string out;
  std::string whitelist;
  std::string fractions = "0.70,0.25,0.05";
  int neg_ratio = 4;
  std::uint64_t seed = 1;
};

int run_build_dataset(const BuildDatasetOptions& o) {
  dataset::Whitelist whitelist =
      o.whitelist.empty() ? dataset::default_whitelist() : dataset::load_whitelist_file(o.whitelist);
  std::vector<dataset::LabeledRelation> records = dataset::load_relations_file(o.relations, whitelist);
  corpus::PairPathIndex index = corpus::PairPathIndex::load_tsv_file(o.index);
  std::vector<dataset::LabeledInstance> instances =
      dataset::filter_and_balance(records, index, o.neg_ratio, o.seed);
  dataset::SplitFractions fractions = parse_fractions(o.fractions);
  dataset::DatasetSplit split = o.split == "lexical"
                                    ? dataset::split_lexical(instances, fractions, o.seed)
                                    : dataset::split_random(instances, fractions, o.seed);
  dataset::save_split(split, o.out, o.seed);
  write_config_json({{"command", "build-dataset"},
                     {"relations", o.relations},
                     {"index", o.index},
                     {"split", o.split},
                     {"whitelist", o.whitelist.empty() ? "<default>" : o.whitelist},
                     {"fractions", o.fractions},
                     {"neg_ratio", o.neg_ratio},
                     {"seed", o.seed},
                     {"out", o.out}},
                    fs::path(o.out) / "config.json");
  std::cout << "instances: " << instances.size() << " (train " << split.train.size() << ", test "
            << split.test.size() << ", validation " << split.validation.size() << ", discarded "
            << split.discarded << ")\n";
  return 0;
}

// ---------------------------------------------------------------------- train

struct TrainOptions {
  std::string dataset_dir;
  std::string index;
  std::string method;
  std::string embeddings;
  std::vector<std::string> corpus;  // slqs
  std::string out;
  std::uint64_t seed = 1;
  double lr = -1.0;        // resolved per method
  double dropout = -1.0;   // resolved per method
  int epochs = -1;         // resolved per method
  int minibatch = 10;
  int hidden = 60;
  int lemma_dim = 50;
  long top_k = -1;         // feature cap, resolved per method
  std::string reg = "l2";
  double lambda = 1e-4;
  std::string dist_method = "concat";
  int slqs_n = 100;
  int window = 2;
};

analysis::Metrics threshold_metrics(const std::vector<std::pair<double, bool>>& scored,
                                    double threshold) {
  std::vector<int> predicted, gold;
  predicted.reserve(scored.size());
  gold.reserve(scored.size());
  for (const auto& [score, label] : scored) {
    predicted.push_back(score > threshold ? 1 : 0);
    gold.push_back(label ? 1 : 0);
  }
  return analysis::evaluate(predicted, gold);
}

json metrics_json(const analysis::Metrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
          {"tp", m.tp},               {"fp", m.fp},         {"fn", m.fn},
          {"tn", m.tn}};
}

int run_train(const TrainOptions& o) {
  const bool is_hypenet = o.method == "hypenet-path" || o.method == "hypenet-integrated";
  const bool is_snow = o.method == "snow" || o.method == "snow-gen";
  const bool needs_index = is_hypenet || is_snow;
  if (!is_hypenet && !is_snow && o.method != "dist-logreg" && o.method != "slqs")
    throw std::runtime_error("unknown method: " + o.method);
  if (needs_index && o.index.empty())
    throw std::runtime_error(o.method + " requires --index (dependency paths per pair)");
  if ((o.method == "hypenet-integrated" || o.method == "dist-logreg") && o.embeddings.empty())
    throw std::runtime_error(o.method + " requires --embeddings (word vectors)");
  if (o.method == "slqs" && o.corpus.empty())
    throw std::runtime_error("slqs requires --corpus (raw sentences for context counts)");

  corpus::PairPathIndex index;
  if (!o.index.empty()) index = corpus::PairPathIndex::load_tsv_file(o.index);
  dataset::DatasetSplit split = dataset::load_split(o.dataset_dir, index);

  json config{{"command", "train"},       {"method", o.method},   {"dataset_dir", o.dataset_dir},
              {"index", o.index},         {"seed", o.seed},       {"out", o.out}};
  json metrics_out;
  metrics_out["format_version"] = 1;
  metrics_out["method"] = o.method;

  if (is_hypenet) {
    network::TrainConfig cfg;
    cfg.mode = o.method == "hypenet-integrated" ? network::Mode::Integrated : network::Mode::PathOnly;
    cfg.learning_rate = o.lr > 0 ? o.lr : 0.001;
    cfg.dropout = o.dropout >= 0 ? o.dropout : (cfg.mode == network::Mode::Integrated ? 0.3 : 0.5);
    cfg.epochs = o.epochs > 0 ? o.epochs : 3;
    cfg.minibatch_size = o.minibatch;
    cfg.seed = o.seed;
    cfg.hidden_dim = o.hidden;
    cfg.lemma_dim = o.lemma_dim;

    baselines::WordEmbeddings pretrained;
    const bool has_pretrained = !o.embeddings.empty();
    if (has_pretrained) pretrained = baselines::load_embeddings_file(o.embeddings);
    network::TrainResult result = network::train(split, cfg, has_pretrained ? &pretrained : nullptr);
    network::save_checkpoint_file({result.params, cfg}, o.out);

    json epochs = json::array();
    double best_f1 = 0.0;
    for (const network::EpochStats& e : result.history) {
      epochs.push_back({{"epoch", e.epoch},
                        {"train_loss", e.train_loss},
                        {"val_precision", e.val_precision},
                        {"val_recall", e.val_recall},
                        {"val_f1", e.val_f1}});
      best_f1 = std::max(best_f1, e.val_f1);
    }
    metrics_out["epochs"] = epochs;
    metrics_out["best_val_f1"] = best_f1;
    config["learning_rate"] = cfg.learning_rate;
    config["dropout"] = cfg.dropout;
    config["epochs"] = cfg.epochs;
    config["minibatch"] = cfg.minibatch_size;
    config["hidden"] = cfg.hidden_dim;
    config["embeddings"] = o.embeddings;
    std::cout << "trained " << o.method << ", best validation F1 " << best_f1 << "\n";
  } else if (is_snow) {
    const bool generalize = o.method == "snow-gen";
    const std::size_t cap = o.top_k > 0 ? static_cast<std::size_t>(o.top_k)
                                        : (generalize ? 1000000u : 100000u);
    features::FeatureSpace space = features::build_feature_space(split.train, generalize, cap);
    std::vector<features::SparseVector> X;
    std::vector<int> y;
    for (const dataset::LabeledInstance& inst : split.train) {
      X.push_back(features::vectorize(inst, space, generalize));
      y.push_back(inst.label ? 1 : 0);
    }
    baselines::LogRegConfig cfg;
    cfg.reg = baselines::regularization_from_string(o.reg);
    cfg.lambda = o.lambda;
    cfg.epochs = o.epochs > 0 ? o.epochs : 30;
    cfg.learning_rate = o.lr > 0 ? o.lr : 0.1;
    cfg.seed = o.seed;
    baselines::LinearModel model = train_logreg(X, y, space.size(), cfg);
    if (model.single_class_warning)
      std::cerr << "warning: training labels are single-class\n";

    std::vector<std::pair<double, bool>> val_scored;
    for (const dataset::LabeledInstance& inst : split.validation)
      val_scored.emplace_back(predict_logreg(model, features::vectorize(inst, space, generalize)),
                              inst.label);
    analysis::Metrics val = threshold_metrics(val_scored, 0.5);
    metrics_out["validation"] = metrics_json(val);
    metrics_out["feature_count"] = space.size();
    baselines::save_linear_model_file({o.method, model, space, "", ""}, o.out);
    {
      std::ostringstream tsv;
      space.save_tsv(tsv);
      util::atomic_write_file(o.out + ".features.tsv", tsv.str());
    }
    config["top_k"] = cap;
    config["reg"] = o.reg;
    config["lambda"] = o.lambda;
    config["epochs"] = cfg.epochs;
    config["learning_rate"] = cfg.learning_rate;
    std::cout << "trained " << o.method << " over " << space.size() << " features, validation F1 "
              << val.f1 << "\n";
  } else if (o.method == "dist-logreg") {
    baselines::WordEmbeddings embeddings = baselines::load_embeddings_file(o.embeddings);
    baselines::PairFeatureMethod method = baselines::pair_feature_method_from_string(o.dist_method);
    const int dim = method == baselines::PairFeatureMethod::Concat ? 2 * embeddings.dim
                    : method == baselines::PairFeatureMethod::Diff ? embeddings.dim
                                                                   : 1;
    auto featurize = [&](const dataset::LabeledInstance& inst) {
      return baselines::to_sparse(
          baselines::distributional_features(inst.x, inst.y, embeddings, method).values);
    };
    std::vector<features::SparseVector> X;
    std::vector<int> y;
    for (const dataset::LabeledInstance& inst : split.train) {
      X.push_back(featurize(inst));
      y.push_back(inst.label ? 1 : 0);
    }
    baselines::LogRegConfig cfg;
    cfg.reg = baselines::regularization_from_string(o.reg);
    cfg.lambda = o.lambda;
    cfg.epochs = o.epochs > 0 ? o.epochs : 30;
    cfg.learning_rate = o.lr > 0 ? o.lr : 0.1;
    cfg.seed = o.seed;
    baselines::LinearModel model = train_logreg(X, y, dim, cfg);
    if (model.single_class_warning)
      std::cerr << "warning: training labels are single-class\n";

    std::vector<std::pair<double, bool>> val_scored;
    for (const dataset::LabeledInstance& inst : split.validation)
      val_scored.emplace_back(predict_logreg(model, featurize(inst)), inst.label);
    analysis::Metrics val = threshold_metrics(val_scored, 0.5);
    metrics_out["validation"] = metrics_json(val);
    baselines::save_linear_model_file({o.method, model, {}, o.dist_method, o.embeddings}, o.out);
    config["dist_method"] = o.dist_method;
    config["embeddings"] = o.embeddings;
    config["reg"] = o.reg;
    config["lambda"] = o.lambda;
    config["epochs"] = cfg.epochs;
    config["learning_rate"] = cfg.learning_rate;
    std::cout << "trained dist-logreg (" << o.dist_method << "), validation F1 " << val.f1 << "\n";
  } else {  // slqs
    std::vector<corpus::Sentence> sentences;
    for (const std::string& file : o.corpus) {
      corpus::ParsedCorpus parsed = corpus::parse_conllu_file(file);
      sentences.insert(sentences.end(), parsed.sentences.begin(), parsed.sentences.end());
    }
    corpus::Vocabulary terms;
    for (const auto* part : {&split.train, &split.test, &split.validation})
      for (const dataset::LabeledInstance& inst : *part) {
        terms.insert(inst.x);
        terms.insert(inst.y);
      }
    baselines::SlqsConfig cfg;
    cfg.max_contexts = o.slqs_n;
    cfg.window = o.window;
    baselines::SlqsModel model = baselines::slqs_fit(sentences, terms, cfg);

    std::vector<std::pair<std::optional<double>, bool>> val_scored;
    bool any_defined = false;
    for (const dataset::LabeledInstance& inst : split.validation) {
      std::optional<double> score = baselines::slqs_score(model, inst.x, inst.y);
      any_defined = any_defined || score.has_value();
      val_scored.emplace_back(score, inst.label);
    }
    if (any_defined) {
      model.threshold = baselines::tune_slqs_threshold(val_scored);
    } else {
      // Reference defaults when tuning is impossible.
      model.threshold = split.mode == dataset::SplitMode::Lexical ? 0.007629 : 0.000464;
      std::cerr << "warning: no defined SLQS scores on validation; using reference threshold\n";
    }
    std::vector<int> predicted, gold;
    for (const auto& [score, label] : val_scored) {
      predicted.push_back(score && *score > model.threshold ? 1 : 0);
      gold.push_back(label ? 1 : 0);
    }
    analysis::Metrics val = analysis::evaluate(predicted, gold);
    metrics_out["validation"] = metrics_json(val);
    metrics_out["threshold"] = model.threshold;
    model.save_json_file(o.out);
    config["corpus"] = o.corpus;
    config["slqs_n"] = o.slqs_n;
    config["window"] = o.window;
    config["threshold"] = model.threshold;
    std::cout << "trained slqs (N=" << o.slqs_n << "), threshold " << model.threshold
              << ", validation F1 " << val.f1 << "\n";
  }

  write_config_json(config, o.out + ".config.json");
  util::atomic_write_file(o.out + ".metrics.json", metrics_out.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string model;
  std::string test;
  std::string index;
  std::string relations;
  std::string embeddings;
  std::string out;
  std::uint64_t fn_cooccurrence_threshold = 25;
  double fn_percentile = 10.0;
};

struct ScoredInstance {
  double score = 0.0;
  bool has_score = true;
  bool flagged = false;  // empty paths / OOV terms / undefined measure
  int predicted = 0;
};

int run_evaluate(const EvaluateOptions& o) {
  json header = json::parse(util::read_file(o.model));
  const std::string kind = header.value("kind", "");
  corpus::PairPathIndex index;
  if (!o.index.empty()) index = corpus::PairPathIndex::load_tsv_file(o.index);
  if ((kind == "hypenet" || kind == "snow" || kind == "snow-gen") && o.index.empty())
    throw std::runtime_error("evaluating a " + kind + " model requires --index");
  std::vector<dataset::LabeledInstance> instances = dataset::load_instances_file(o.test, index);
  if (instances.empty()) throw std::runtime_error("test file contains no instances: " + o.test);

  std::vector<ScoredInstance> scored(instances.size());
  if (kind == "hypenet") {
    network::Checkpoint checkpoint = network::load_checkpoint_file(o.model);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      network::PairPrediction pred = network::predict_pair(checkpoint.params, instances[i]);
      scored[i].score = pred.probability;
      scored[i].flagged = pred.empty_paths;
      scored[i].predicted = pred.probability > 0.5 ? 1 : 0;
    }
  } else if (kind == "snow" || kind == "snow-gen") {
    baselines::StoredLinearModel stored = baselines::load_linear_model_file(o.model);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      features::SparseVector v =
          features::vectorize(instances[i], stored.space, stored.space.generalized);
      scored[i].score = predict_logreg(stored.model, v);
      scored[i].flagged = v.items.empty();
      scored[i].predicted = scored[i].score > 0.5 ? 1 : 0;
    }
  } else if (kind == "dist-logreg") {
    baselines::StoredLinearModel stored = baselines::load_linear_model_file(o.model);
    std::string embeddings_path = !o.embeddings.empty() ? o.embeddings : stored.embeddings_path;
    if (embeddings_path.empty())
      throw std::runtime_error("dist-logreg evaluation requires --embeddings");
    baselines::WordEmbeddings embeddings = baselines::load_embeddings_file(embeddings_path);
    baselines::PairFeatureMethod method = baselines::pair_feature_method_from_string(stored.dist_method);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      baselines::PairFeatures f =
          baselines::distributional_features(instances[i].x, instances[i].y, embeddings, method);
      scored[i].score = predict_logreg(stored.model, baselines::to_sparse(f.values));
      scored[i].flagged = f.oov_x || f.oov_y;
      scored[i].predicted = scored[i].score > 0.5 ? 1 : 0;
    }
  } else if (kind == "slqs") {
    baselines::SlqsModel model = baselines::SlqsModel::load_json_file(o.model);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      std::optional<double> score = baselines::slqs_score(model, instances[i].x, instances[i].y);
      scored[i].has_score = score.has_value();
      scored[i].flagged = !score.has_value();
      scored[i].score = score.value_or(0.0);
      scored[i].predicted = score && *score > model.threshold ? 1 : 0;
    }
  } else {
    throw std::runtime_error("unknown model kind '" + kind + "' in " + o.model);
  }

  std::vector<int> predicted, gold;
  std::size_t flagged_count = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    predicted.push_back(scored[i].predicted);
    gold.push_back(instances[i].label ? 1 : 0);
    if (scored[i].flagged) ++flagged_count;
  }
  analysis::Metrics metrics = analysis::evaluate(predicted, gold);

  json out;
  out["format_version"] = 1;
  out["model"] = o.model;
  out["kind"] = kind;
  out["metrics"] = metrics_json(metrics);
  out["flagged"] = flagged_count;

  if (!o.relations.empty()) {
    std::vector<dataset::LabeledRelation> relations =
        dataset::load_relations_file(o.relations, dataset::default_whitelist());
    std::vector<analysis::EvaluatedPair> pairs(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i)
      pairs[i] = {instances[i].x, instances[i].y, predicted[i], gold[i]};
    analysis::BreakdownConfig breakdown_config;
    breakdown_config.low_cooccurrence_threshold = o.fn_cooccurrence_threshold;
    breakdown_config.infrequent_percentile = o.fn_percentile;
    analysis::ErrorBreakdown breakdown =
        analysis::error_breakdown(pairs, index, relations, breakdown_config);
    json fp = json::object();
    for (const auto& [relation, count] : breakdown.false_positives_by_relation) fp[relation] = count;
    out["error_breakdown"] = {{"false_positives_by_relation", fp},
                              {"fn_low_cooccurrence", breakdown.fn_low_cooccurrence},
                              {"fn_infrequent_term", breakdown.fn_infrequent_term},
                              {"fn_uncategorized", breakdown.fn_uncategorized},
                              {"fn_total", breakdown.fn_total},
                              {"fp_total", breakdown.fp_total}};
  }

  std::ostringstream tsv;
  tsv << "# hypenet-predictions v1\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    tsv << instances[i].x << '\t' << instances[i].y << '\t' << gold[i] << '\t' << predicted[i]
        << '\t';
    if (scored[i].has_score)
      tsv << scored[i].score;
    else
      tsv << "NA";
    tsv << '\t' << instances[i].paths.size() << '\n';
  }

  util::atomic_write_file(o.out, out.dump(2) + "\n");
  util::atomic_write_file(o.out + ".predictions.tsv", tsv.str());
  write_config_json({{"command", "evaluate"},
                     {"model", o.model},
                     {"test", o.test},
                     {"index", o.index},
                     {"relations", o.relations},
                     {"embeddings", o.embeddings},
                     {"out", o.out}},
                    o.out + ".config.json");
  std::cout << "precision " << metrics.precision << " recall " << metrics.recall << " f1 "
            << metrics.f1 << " (flagged " << flagged_count << ")\n";
  return 0;
}

// -------------------------------------------------------------- analyze-paths

struct AnalyzeOptions {
  std::string model;
  std::string index;
  std::string out;
  long top_k = 100;
};

int run_analyze(const AnalyzeOptions& o) {
  if (o.top_k < 1) throw std::runtime_error("--top-k must be at least 1");
  network::Checkpoint checkpoint = network::load_checkpoint_file(o.model);
  corpus::PairPathIndex index = corpus::PairPathIndex::load_tsv_file(o.index);
  std::vector<std::string> paths;
  for (const auto& [pair, counts] : index.entries)
    for (const auto& [path, count] : counts) paths.push_back(path);
  std::vector<analysis::PathScore> ranked =
      analysis::rank_paths(checkpoint.params, paths, static_cast<std::size_t>(o.top_k));
  std::ostringstream tsv;
  tsv << "# hypenet-pathscores v1\n";
  for (const analysis::PathScore& ps : ranked) tsv << ps.path << '\t' << ps.score << '\n';
  util::atomic_write_file(o.out, tsv.str());
  write_config_json({{"command", "analyze-paths"},
                     {"model", o.model},
                     {"index", o.index},
                     {"top_k", o.top_k},
                     {"out", o.out}},
                    o.out + ".config.json");
  std::cout << "ranked " << ranked.size() << " paths\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Corpus-to-classifier toolkit for hypernymy detection over dependency paths"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file (sections per subcommand)");

  ExtractOptions extract;
  CLI::App* cmd_extract = app.add_subcommand("extract-paths", "Index dependency paths between term pairs");
  cmd_extract->add_option("--corpus", extract.corpus, "CoNLL-U corpus files")->required()->expected(-1);
  cmd_extract->add_option("--vocab", extract.vocab, "Term list, one per line")->required();
  cmd_extract->add_option("--out", extract.out, "Output index TSV")->required();

  BuildDatasetOptions build;
  CLI::App* cmd_build = app.add_subcommand("build-dataset", "Label, filter, balance and split term pairs");
  cmd_build->add_option("--relations", build.relations, "Relations TSV (x, y, relation, resource)")->required();
  cmd_build->add_option("--index", build.index, "Pair-path index TSV")->required();
  cmd_build->add_option("--split", build.split, "random|lexical")
      ->check(CLI::IsMember({"random", "lexical"}));
  cmd_build->add_option("--whitelist", build.whitelist, "Positive (resource, relation) TSV");
  cmd_build->add_option("--fractions", build.fractions, "train,test,validation fractions");
  cmd_build->add_option("--neg-ratio", build.neg_ratio, "Negatives per positive")->check(CLI::PositiveNumber);
  cmd_build->add_option("--seed", build.seed, "RNG seed");
  cmd_build->add_option("--out", build.out, "Output dataset directory")->required();

  TrainOptions train;
  CLI::App* cmd_train = app.add_subcommand("train", "Train a hypernymy classifier");
  cmd_train->add_option("--dataset-dir", train.dataset_dir, "Dataset directory")->required();
  cmd_train->add_option("--method", train.method,
                        "hypenet-path|hypenet-integrated|snow|snow-gen|dist-logreg|slqs")
      ->required()
      ->check(CLI::IsMember({"hypenet-path", "hypenet-integrated", "snow", "snow-gen",
                             "dist-logreg", "slqs"}));
  cmd_train->add_option("--index", train.index, "Pair-path index TSV");
  cmd_train->add_option("--embeddings", train.embeddings, "Word-embedding text file");
  cmd_train->add_option("--corpus", train.corpus, "CoNLL-U corpus files (slqs)")->expected(-1);
  cmd_train->add_option("--seed", train.seed, "RNG seed");
  cmd_train->add_option("--lr", train.lr, "Learning rate");
  cmd_train->add_option("--dropout", train.dropout, "Embedding-component dropout rate");
  cmd_train->add_option("--epochs", train.epochs, "Training epochs");
  cmd_train->add_option("--minibatch", train.minibatch, "Minibatch size")->check(CLI::PositiveNumber);
  cmd_train->add_option("--hidden", train.hidden, "LSTM hidden size")->check(CLI::PositiveNumber);
  cmd_train->add_option("--lemma-dim", train.lemma_dim, "Lemma embedding size without pretrained vectors")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--top-k", train.top_k, "Feature cap for snow / snow-gen");
  cmd_train->add_option("--reg", train.reg, "l1|l2")->check(CLI::IsMember({"l1", "l2"}));
  cmd_train->add_option("--lambda", train.lambda, "Regularization strength");
  cmd_train->add_option("--dist-method", train.dist_method, "concat|diff|dot")
      ->check(CLI::IsMember({"concat", "diff", "dot"}));
  cmd_train->add_option("--slqs-n", train.slqs_n, "Max associated contexts per term")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--window", train.window, "SLQS context window")->check(CLI::PositiveNumber);
  cmd_train->add_option("--out", train.out, "Output model file")->required();

  EvaluateOptions evaluate;
  CLI::App* cmd_evaluate = app.add_subcommand("evaluate", "Score a trained model on a test split");
  cmd_evaluate->add_option("--model", evaluate.model, "Model file")->required();
  cmd_evaluate->add_option("--test", evaluate.test, "Test split TSV")->required();
  cmd_evaluate->add_option("--index", evaluate.index, "Pair-path index TSV");
  cmd_evaluate->add_option("--relations", evaluate.relations, "Relations TSV for the error breakdown");
  cmd_evaluate->add_option("--embeddings", evaluate.embeddings, "Override stored embeddings path");
  cmd_evaluate->add_option("--fn-cooccurrence", evaluate.fn_cooccurrence_threshold,
                           "Joint-occurrence cutoff for the low-statistics bucket");
  cmd_evaluate->add_option("--fn-percentile", evaluate.fn_percentile,
                           "Corpus-frequency percentile for the infrequent-term bucket");
  cmd_evaluate->add_option("--out", evaluate.out, "Output metrics JSON")->required();

  AnalyzeOptions analyze;
  CLI::App* cmd_analyze = app.add_subcommand("analyze-paths", "Rank indexed paths by model score");
  cmd_analyze->add_option("--model", analyze.model, "hypenet checkpoint")->required();
  cmd_analyze->add_option("--index", analyze.index, "Pair-path index TSV")->required();
  cmd_analyze->add_option("--top-k", analyze.top_k, "Paths to keep");
  cmd_analyze->add_option("--out", analyze.out, "Output TSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmd_extract->parsed()) return run_extract(extract);
    if (cmd_build->parsed()) return run_build_dataset(build);
    if (cmd_train->parsed()) return run_train(train);
    if (cmd_evaluate->parsed()) return run_evaluate(evaluate);
    if (cmd_analyze->parsed()) return run_analyze(analyze);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return 1;
}

}  // namespace hype::cli
