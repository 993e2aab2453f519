#include <iostream>
#include <memory>

#include "common.hpp"
#include "sentopic/errors.hpp"
#include "sentopic/eval.hpp"
#include "sentopic/reports.hpp"
#include "sentopic/tasks.hpp"

namespace sentopic::cli {
namespace {

Corpus load_matching_corpus(const std::string& dir,
                            const ModelParams& params) {
  Corpus corpus = Corpus::load(dir);
  if (corpus.vocabulary.size() != params.vocab_size()) {
    throw DataError("model expects K=" + std::to_string(params.vocab_size()) +
                    " but corpus has K=" +
                    std::to_string(corpus.vocabulary.size()));
  }
  return corpus;
}

struct PerplexityOpts {
  std::string model;
  std::string data;
  std::string out;
  std::string config;
  std::string split = "test";
  std::string method = "ais";  // ais|exact
  std::string sentiment_handling = "marginal";  // marginal|gold
  std::size_t ais_runs = 100;
  std::size_t ais_temps = 1000;
  std::size_t z_buckets = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

void run_perplexity(const PerplexityOpts& opts, ResolvedConfig& resolved) {
  const ModelParams params = load_model(opts.model);
  const Corpus corpus = load_matching_corpus(opts.data, params);
  const std::vector<Document> docs = docs_for_split(corpus, opts.split);

  ZEstimatorConfig z_config;
  if (opts.method == "ais") {
    z_config.use_ais = true;
  } else if (opts.method == "exact") {
    z_config.use_ais = false;
  } else {
    throw CLI::ValidationError("method", "expected 'ais' or 'exact'");
  }
  z_config.ais_runs = opts.ais_runs;
  z_config.ais_temperatures = opts.ais_temps;
  z_config.max_buckets = opts.z_buckets;
  z_config.seed = opts.seed;
  z_config.threads = opts.threads;

  PerplexityReport report;
  if (opts.sentiment_handling == "marginal") {
    const auto z = log_z_for_docs(params, docs, z_config);
    report = perplexity(params, docs, z);
  } else if (opts.sentiment_handling == "gold") {
    const auto z = log_z_for_docs_by_label(params, docs, z_config);
    report = perplexity_given_sentiment(params, docs, z);
  } else {
    throw CLI::ValidationError("sentiment-handling",
                               "expected 'marginal' or 'gold'");
  }

  print_resolved(resolved);
  std::cout << "perplexity " << format_double(report.perplexity) << " over "
            << docs.size() << " documents, " << report.total_words
            << " words\n";
  if (!opts.out.empty()) {
    std::vector<std::uint32_t> lengths;
    lengths.reserve(docs.size());
    for (const auto& doc : docs) {
      lengths.push_back(doc.length);
    }
    write_perplexity_csv(report, lengths, opts.out, resolved.lines());
  }
}

struct ClassifyOpts {
  std::string model;
  std::string data;
  std::string out;
  std::string config;
  std::string split = "test";
  std::string lexicon;
};

void run_classify(const ClassifyOpts& opts, ResolvedConfig& resolved) {
  const ModelParams params = load_model(opts.model);
  if (!params.joint()) {
    throw DataError("eval classify needs a joint-mode model");
  }
  const Corpus corpus = load_matching_corpus(opts.data, params);
  const std::vector<Document> docs = docs_for_split(corpus, opts.split);

  std::optional<LexiconOverlap> overlap;
  if (!opts.lexicon.empty()) {
    overlap = lexicon_intersection(corpus.vocabulary,
                                   SentimentLexicon::load(opts.lexicon));
  }

  std::vector<ClassificationRow> rows;
  std::size_t labeled = 0, correct = 0, baseline_correct = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto result = classify_sentiment(params, docs[i]);
    ClassificationRow row;
    row.doc_id = i;
    row.gold = docs[i].sentiment;
    row.predicted = result.label;
    row.probs = result.probs;
    if (overlap) {
      row.baseline = count_baseline(docs[i], *overlap);
    }
    if (docs[i].sentiment) {
      ++labeled;
      correct += result.label == *docs[i].sentiment ? 1 : 0;
      if (overlap) {
        baseline_correct += *row.baseline == *docs[i].sentiment ? 1 : 0;
      }
    }
    rows.push_back(std::move(row));
  }

  print_resolved(resolved);
  if (labeled > 0) {
    std::cout << "accuracy "
              << format_double(static_cast<double>(correct) /
                               static_cast<double>(labeled))
              << " over " << labeled << " labeled documents\n";
    if (overlap) {
      std::cout << "baseline_accuracy "
                << format_double(static_cast<double>(baseline_correct) /
                                 static_cast<double>(labeled))
                << '\n';
    }
  } else {
    std::cout << "no gold labels in split '" << opts.split
              << "'; predictions only\n";
  }
  if (!opts.out.empty()) {
    write_classification_csv(rows, params.sentiment_size(), opts.out,
                             resolved.lines());
  }
}

struct RetrieveOpts {
  std::string model;
  std::string data;
  std::string out;
  std::string config;
  std::string k_grid = "1,3,7,15,31,63,127";
  std::size_t threads = 1;
};

void run_retrieve(const RetrieveOpts& opts, ResolvedConfig& resolved) {
  const ModelParams params = load_model(opts.model);
  const Corpus corpus = load_matching_corpus(opts.data, params);
  const auto grid = parse_k_grid(opts.k_grid);
  const PRCurve curve = pr_curve(corpus, params, grid, opts.threads);
  print_resolved(resolved);
  for (const auto& point : curve.points) {
    std::cout << "k " << point.k << " recall "
              << format_double(point.recall) << " precision "
              << format_double(point.precision) << '\n';
  }
  if (!opts.out.empty()) {
    write_pr_curve_csv(curve, opts.out, resolved.lines());
  }
}

struct TopicsOpts {
  std::string model;
  std::string data;
  std::string lexicon;
  std::string out;
  std::string config;
};

void run_topics(const TopicsOpts& opts, ResolvedConfig& resolved) {
  const ModelParams params = load_model(opts.model);
  const Corpus corpus = load_matching_corpus(opts.data, params);
  const SentimentLexicon lexicon = SentimentLexicon::load(opts.lexicon);
  const auto report = topic_sentiment_report(params, corpus.vocabulary,
                                             lexicon);
  print_resolved(resolved);
  std::cout << "tagged " << 2 * report.tags_per_side << " topics, precision "
            << format_double(report.precision)
            << (report.degenerate ? " (degenerate ordering)" : "") << '\n';
  if (!opts.out.empty()) {
    write_topic_report_csv(report, opts.out, resolved.lines());
  }
}

struct MlpOpts {
  std::string model;
  std::string data;
  std::string out;
  std::string config;
  std::size_t epochs = 20;
  double learning_rate = 0.01;
  double init_sigma = 1.0;
  std::uint64_t seed = 0;
};

void run_mlp(const MlpOpts& opts, ResolvedConfig& resolved) {
  const ModelParams params = load_model(opts.model);
  if (!params.joint()) {
    throw DataError("eval mlp needs a joint-mode model for the warm start");
  }
  const Corpus corpus = load_matching_corpus(opts.data, params);
  const std::vector<Document> train_docs = docs_for_split(corpus, "train");
  const std::vector<Document> test_docs = docs_for_split(corpus, "test");

  double mean_length = 0.0;
  for (const auto& doc : train_docs) {
    mean_length += static_cast<double>(doc.length);
  }
  mean_length /= static_cast<double>(train_docs.size());

  MlpClassifier warm = MlpClassifier::warm_start(params, mean_length);
  Rng init_rng(opts.seed, "mlp-init");
  MlpClassifier random = MlpClassifier::random_init(
      params.vocab_size(), params.hidden_size(), params.sentiment_size(),
      opts.init_sigma, init_rng);

  Rng warm_rng(opts.seed, "mlp-train", 0);
  Rng random_rng(opts.seed, "mlp-train", 1);
  mlp_train(warm, train_docs, opts.epochs, opts.learning_rate, warm_rng);
  mlp_train(random, train_docs, opts.epochs, opts.learning_rate, random_rng);

  const double warm_acc = mlp_accuracy(warm, test_docs);
  const double random_acc = mlp_accuracy(random, test_docs);
  print_resolved(resolved);
  std::cout << "warm_start_accuracy " << format_double(warm_acc) << '\n';
  std::cout << "random_init_accuracy " << format_double(random_acc) << '\n';
  if (!opts.out.empty()) {
    std::ofstream out(opts.out);
    if (!out) {
      throw DataError("cannot write " + opts.out);
    }
    for (const auto& line : resolved.lines()) {
      out << "# " << line << '\n';
    }
    out << "arm,test_accuracy\n";
    out << "warm_start," << format_double(warm_acc) << '\n';
    out << "random_init," << format_double(random_acc) << '\n';
  }
}

}  // namespace

void register_eval(CLI::App& app) {
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate a trained model: perplexity, classification, "
              "retrieval, topic tagging, MLP warm start");
  eval_cmd->require_subcommand(1);

  {
    auto opts = std::make_shared<PerplexityOpts>();
    auto* cmd = eval_cmd->add_subcommand("perplexity",
                                         "Held-out perplexity");
    cmd->add_option("--model", opts->model, "model file")->required();
    cmd->add_option("--data", opts->data, "corpus directory")->required();
    cmd->add_option("--out", opts->out, "report CSV path");
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--split", opts->split, "train|test|all");
    cmd->add_option("--method", opts->method,
                    "partition function estimator: ais|exact");
    cmd->add_option("--sentiment-handling", opts->sentiment_handling,
                    "marginal|gold");
    cmd->add_option("--ais-runs", opts->ais_runs, "AIS runs per length");
    cmd->add_option("--ais-temps", opts->ais_temps, "AIS temperatures");
    cmd->add_option("--z-buckets", opts->z_buckets,
                    "bucket lengths into at most this many estimates "
                    "(0 = exact per length)");
    cmd->add_option("--seed", opts->seed, "PRNG seed");
    cmd->add_option("--threads", opts->threads, "AIS thread cap");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("split", opts->split);
      resolved.merge("method", opts->method);
      resolved.merge("sentiment-handling", opts->sentiment_handling);
      resolved.merge("ais-runs", opts->ais_runs);
      resolved.merge("ais-temps", opts->ais_temps);
      resolved.merge("z-buckets", opts->z_buckets);
      resolved.merge_seed("seed", opts->seed);
      resolved.merge("threads", opts->threads);
      resolved.record("model", opts->model);
      resolved.record("data", opts->data);
      run_perplexity(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<ClassifyOpts>();
    auto* cmd = eval_cmd->add_subcommand("classify",
                                         "Sentiment classification");
    cmd->add_option("--model", opts->model, "model file")->required();
    cmd->add_option("--data", opts->data, "corpus directory")->required();
    cmd->add_option("--out", opts->out, "report CSV path");
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--split", opts->split, "train|test|all");
    cmd->add_option("--lexicon", opts->lexicon,
                    "also score the word-count baseline with this lexicon");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("split", opts->split);
      resolved.merge("lexicon", opts->lexicon);
      resolved.record("model", opts->model);
      resolved.record("data", opts->data);
      run_classify(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<RetrieveOpts>();
    auto* cmd = eval_cmd->add_subcommand(
        "retrieve", "Cosine retrieval precision-recall curve");
    cmd->add_option("--model", opts->model, "model file")->required();
    cmd->add_option("--data", opts->data, "corpus directory")->required();
    cmd->add_option("--out", opts->out, "PR curve CSV path");
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--k-grid", opts->k_grid,
                    "comma-separated retrieval depths");
    cmd->add_option("--threads", opts->threads, "query thread cap");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("k-grid", opts->k_grid);
      resolved.merge("threads", opts->threads);
      resolved.record("model", opts->model);
      resolved.record("data", opts->data);
      run_retrieve(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<TopicsOpts>();
    auto* cmd = eval_cmd->add_subcommand(
        "topics", "Topic sentiment tagging report");
    cmd->add_option("--model", opts->model, "model file")->required();
    cmd->add_option("--data", opts->data, "corpus directory")->required();
    cmd->add_option("--lexicon", opts->lexicon, "sentiment lexicon file")
        ->required();
    cmd->add_option("--out", opts->out, "topic report CSV path");
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.record("model", opts->model);
      resolved.record("data", opts->data);
      resolved.record("lexicon", opts->lexicon);
      run_topics(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<MlpOpts>();
    auto* cmd = eval_cmd->add_subcommand(
        "mlp", "Warm-started vs randomly initialized MLP comparison");
    cmd->add_option("--model", opts->model, "model file")->required();
    cmd->add_option("--data", opts->data, "corpus directory")->required();
    cmd->add_option("--out", opts->out, "accuracy CSV path");
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--epochs", opts->epochs, "MLP training epochs");
    cmd->add_option("--lr", opts->learning_rate, "MLP learning rate");
    cmd->add_option("--init-sigma", opts->init_sigma,
                    "random-arm initialization std");
    cmd->add_option("--seed", opts->seed, "PRNG seed");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("epochs", opts->epochs);
      resolved.merge("lr", opts->learning_rate);
      resolved.merge("init-sigma", opts->init_sigma);
      resolved.merge_seed("seed", opts->seed);
      resolved.record("model", opts->model);
      resolved.record("data", opts->data);
      run_mlp(*opts, resolved);
    });
  }
}

}  // namespace sentopic::cli
