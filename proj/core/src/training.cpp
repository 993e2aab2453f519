#include "sentopic/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "sentopic/enumeration.hpp"
#include "sentopic/errors.hpp"
#include "sentopic/eval.hpp"
#include "sentopic/numerics.hpp"

namespace sentopic {

GradientEstimate GradientEstimate::zeros(std::size_t vocab_size,
                                         std::size_t hidden_size,
                                         std::size_t sentiment_size) {
  GradientEstimate grad;
  grad.visible_hidden = Matrix(vocab_size, hidden_size);
  grad.visible_bias.assign(vocab_size, 0.0);
  grad.hidden_bias.assign(hidden_size, 0.0);
  if (sentiment_size > 0) {
    grad.sentiment_hidden = Matrix(sentiment_size, hidden_size);
    grad.sentiment_bias.assign(sentiment_size, 0.0);
  }
  return grad;
}

namespace {

void axpy(std::span<double> dst, std::span<const double> src, double scale) {
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] += scale * src[i];
  }
}

}  // namespace

void GradientEstimate::accumulate(const GradientEstimate& other,
                                  double scale) {
  axpy(visible_hidden.flat(), other.visible_hidden.flat(), scale);
  axpy(sentiment_hidden.flat(), other.sentiment_hidden.flat(), scale);
  axpy(visible_bias, other.visible_bias, scale);
  axpy(hidden_bias, other.hidden_bias, scale);
  axpy(sentiment_bias, other.sentiment_bias, scale);
}

void GradientEstimate::scale(double factor) {
  for (auto span : {visible_hidden.flat(), sentiment_hidden.flat(),
                    std::span<double>(visible_bias),
                    std::span<double>(hidden_bias),
                    std::span<double>(sentiment_bias)}) {
    for (double& x : span) {
      x *= factor;
    }
  }
}

std::vector<double> GradientEstimate::flatten() const {
  std::vector<double> out;
  for (auto span : {visible_hidden.flat(), sentiment_hidden.flat(),
                    std::span<const double>(visible_bias),
                    std::span<const double>(hidden_bias),
                    std::span<const double>(sentiment_bias)}) {
    out.insert(out.end(), span.begin(), span.end());
  }
  return out;
}

ModelParams init_params(std::size_t vocab_size, std::size_t hidden_size,
                        std::size_t sentiment_size,
                        const TrainConfig& config) {
  if (vocab_size == 0 || hidden_size == 0) {
    throw std::invalid_argument("init_params: dimensions must be >= 1");
  }
  ModelParams params = ModelParams::zeros(vocab_size, hidden_size,
                                          sentiment_size);
  Rng rng(config.seed, "init");
  for (double& w : params.visible_hidden.flat()) {
    w = config.init_sigma * rng.normal();
  }
  for (double& a : params.visible_bias) {
    a = config.init_sigma * rng.normal();
  }
  for (double& u : params.sentiment_hidden.flat()) {
    u = config.init_sigma * rng.normal();
  }
  for (double& c : params.sentiment_bias) {
    c = config.init_sigma * rng.normal();
  }
  // hidden bias stays zero
  return params;
}

GradientEstimate cd_step(const ModelParams& params, const Document& doc,
                         std::optional<std::size_t> sentiment, std::size_t k,
                         Rng& rng) {
  if (doc.empty()) {
    throw std::invalid_argument("cd_step: document is empty");
  }
  if (k < 1) {
    throw std::invalid_argument("cd_step: k must be >= 1");
  }
  const bool joint = params.joint();
  if (joint && !sentiment) {
    throw std::invalid_argument(
        "cd_step: joint-mode parameters need a sentiment label");
  }

  const std::vector<double> positive_hidden =
      joint ? hidden_given_vs(params, doc, *sentiment)
            : hidden_given_v(params, doc);

  std::vector<double> chain_hidden = sample_hidden(positive_hidden, rng);
  Document recon;
  std::size_t recon_sentiment = 0;
  std::vector<double> negative_hidden;
  for (std::size_t step = 0; step < k; ++step) {
    recon = sample_document(params, chain_hidden, doc.length, rng);
    if (joint) {
      recon_sentiment =
          sample_sentiment(sentiment_softmax(params, chain_hidden), rng);
      negative_hidden = hidden_given_vs(params, recon, recon_sentiment);
    } else {
      negative_hidden = hidden_given_v(params, recon);
    }
    if (step + 1 < k) {
      chain_hidden = sample_hidden(negative_hidden, rng);
    }
  }

  GradientEstimate grad = GradientEstimate::zeros(
      params.vocab_size(), params.hidden_size(), params.sentiment_size());
  for (const auto& [word, count] : doc.entries) {
    const double c = static_cast<double>(count);
    axpy(grad.visible_hidden.row(word), positive_hidden, c);
    grad.visible_bias[word] += c;
  }
  for (const auto& [word, count] : recon.entries) {
    const double c = static_cast<double>(count);
    axpy(grad.visible_hidden.row(word), negative_hidden, -c);
    grad.visible_bias[word] -= c;
  }
  const double length = static_cast<double>(doc.length);
  for (std::size_t j = 0; j < params.hidden_size(); ++j) {
    grad.hidden_bias[j] = length * (positive_hidden[j] - negative_hidden[j]);
  }
  if (joint) {
    axpy(grad.sentiment_hidden.row(*sentiment), positive_hidden, 1.0);
    axpy(grad.sentiment_hidden.row(recon_sentiment), negative_hidden, -1.0);
    grad.sentiment_bias[*sentiment] += 1.0;
    grad.sentiment_bias[recon_sentiment] -= 1.0;
  }
  return grad;
}

namespace {

// Per-(v, s) sufficient statistics with the hidden layer summed out:
// E[v_k h_j] contributes v_k * sigma_j, etc.
void accumulate_stats(const ModelParams& params, const Document& doc,
                      std::optional<std::size_t> sentiment, double weight,
                      GradientEstimate& stats) {
  const std::vector<double> inputs = hidden_inputs(params, doc, sentiment);
  std::vector<double> sigma(inputs.size());
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    sigma[j] = sigmoid(inputs[j]);
  }
  for (const auto& [word, count] : doc.entries) {
    const double c = static_cast<double>(count);
    axpy(stats.visible_hidden.row(word), sigma, weight * c);
    stats.visible_bias[word] += weight * c;
  }
  const double length = static_cast<double>(doc.length);
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    stats.hidden_bias[j] += weight * length * sigma[j];
  }
  if (sentiment) {
    axpy(stats.sentiment_hidden.row(*sentiment), sigma, weight);
    stats.sentiment_bias[*sentiment] += weight;
  }
}

// Model expectation of the sufficient statistics at a fixed document length,
// by enumeration over count vectors (weighted by multiplicity) and
// sentiments.
GradientEstimate model_expectation(const ModelParams& params,
                                   std::uint32_t length) {
  const double log_z = exact_log_z(params, length).log_z;
  GradientEstimate stats = GradientEstimate::zeros(
      params.vocab_size(), params.hidden_size(), params.sentiment_size());
  for_each_count_vector(
      params.vocab_size(), length,
      [&](std::span<const std::uint32_t> counts) {
        const Document doc = make_document(counts);
        const double log_mult = log_multinomial_coefficient(counts);
        if (params.joint()) {
          for (std::size_t s = 0; s < params.sentiment_size(); ++s) {
            const double weight =
                std::exp(log_mult + free_energy(params, doc, s) - log_z);
            accumulate_stats(params, doc, s, weight, stats);
          }
        } else {
          const double weight =
              std::exp(log_mult + free_energy(params, doc) - log_z);
          accumulate_stats(params, doc, std::nullopt, weight, stats);
        }
      });
  return stats;
}

std::optional<std::size_t> doc_sentiment(const ModelParams& params,
                                         const Document& doc) {
  if (!params.joint()) {
    return std::nullopt;
  }
  if (!doc.sentiment || *doc.sentiment >= params.sentiment_size()) {
    throw DataError(
        "joint-mode operation on a document without a valid sentiment label");
  }
  return static_cast<std::size_t>(*doc.sentiment);
}

}  // namespace

GradientEstimate exact_gradient(const ModelParams& params,
                                std::span<const Document> docs) {
  GradientEstimate grad = GradientEstimate::zeros(
      params.vocab_size(), params.hidden_size(), params.sentiment_size());
  std::map<std::uint32_t, GradientEstimate> expectation_by_length;
  for (const Document& doc : docs) {
    accumulate_stats(params, doc, doc_sentiment(params, doc), 1.0, grad);
    if (expectation_by_length.find(doc.length) ==
        expectation_by_length.end()) {
      expectation_by_length.emplace(doc.length,
                                    model_expectation(params, doc.length));
    }
  }
  for (const Document& doc : docs) {
    grad.accumulate(expectation_by_length.at(doc.length), -1.0);
  }
  return grad;
}

double exact_log_likelihood(const ModelParams& params,
                            std::span<const Document> docs) {
  std::map<std::uint32_t, double> log_z_by_length;
  double total = 0.0;
  for (const Document& doc : docs) {
    const auto it = log_z_by_length.find(doc.length);
    const double log_z = it != log_z_by_length.end()
                             ? it->second
                             : (log_z_by_length[doc.length] =
                                    exact_log_z(params, doc.length).log_z);
    const auto sentiment = doc_sentiment(params, doc);
    const double unnorm = sentiment ? free_energy(params, doc, *sentiment)
                                    : free_energy(params, doc);
    total += unnorm - log_z;
  }
  return total;
}

void apply_update(ModelParams& params, const GradientEstimate& grad,
                  double learning_rate) {
  axpy(params.visible_hidden.flat(), grad.visible_hidden.flat(),
       learning_rate);
  axpy(params.sentiment_hidden.flat(), grad.sentiment_hidden.flat(),
       learning_rate);
  axpy(params.visible_bias, grad.visible_bias, learning_rate);
  axpy(params.hidden_bias, grad.hidden_bias, learning_rate);
  axpy(params.sentiment_bias, grad.sentiment_bias, learning_rate);
  params.check_finite();
}

void TrainLog::add(std::size_t epoch, std::int64_t doc_index,
                   std::string metric, double value) {
  rows.push_back({epoch, doc_index, std::move(metric), value});
}

void write_train_log_csv(const TrainLog& log,
                         const std::filesystem::path& path,
                         std::span<const std::string> header_lines) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write training log: " + path.string());
  }
  for (const auto& line : header_lines) {
    out << "# " << line << '\n';
  }
  out << "epoch,doc_index,metric_name,value\n";
  char buf[64];
  for (const auto& row : log.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", row.value);
    out << row.epoch << ',' << row.doc_index << ',' << row.metric << ','
        << buf << '\n';
  }
}

TrainResult train(const Corpus& corpus, const TrainConfig& config,
                  ModelKind kind, std::span<const ProbeCallback> callbacks) {
  if (config.learning_rate <= 0.0) {
    throw std::invalid_argument("train: learning_rate must be positive");
  }
  if (config.batch_size < 1 || config.cd_steps < 1 ||
      config.hidden_units < 1) {
    throw std::invalid_argument(
        "train: batch_size, cd_steps and hidden_units must be >= 1");
  }

  std::vector<std::size_t> train_docs;
  std::size_t skipped_empty = 0;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    if (corpus.split[i] != Split::train) {
      continue;
    }
    if (corpus.documents[i].empty()) {
      ++skipped_empty;
      continue;
    }
    train_docs.push_back(i);
  }
  if (train_docs.empty()) {
    throw DataError("train: no non-empty training documents");
  }

  std::size_t sentiment_size = 0;
  if (kind == ModelKind::joint) {
    std::uint32_t max_label = 0;
    for (const std::size_t i : train_docs) {
      const auto& doc = corpus.documents[i];
      if (!doc.sentiment) {
        throw DataError("train: joint mode requires sentiment labels on all "
                        "training documents (document " + std::to_string(i) +
                        " is unlabeled)");
      }
      max_label = std::max(max_label, *doc.sentiment);
    }
    sentiment_size = max_label + 1;
  }

  ModelParams params = init_params(corpus.vocabulary.size(),
                                   config.hidden_units, sentiment_size,
                                   config);
  TrainLog log;
  if (skipped_empty > 0) {
    std::cerr << "train: skipping " << skipped_empty
              << " empty document(s)\n";
    log.add(0, -1, "skipped_empty_docs", static_cast<double>(skipped_empty));
  }

  Rng shuffle_rng(config.seed, "shuffle");
  Rng gibbs_rng(config.seed, "gibbs");

  const std::size_t total_epochs =
      config.iterations_are_updates
          ? (config.iterations + train_docs.size() - 1) / train_docs.size()
          : config.iterations;
  std::size_t updates_left =
      config.iterations_are_updates ? config.iterations : 0;

  auto run_probes = [&](std::size_t epoch) {
    for (const auto& cb : callbacks) {
      cb(epoch, params, log);
    }
  };
  if (config.probe_interval > 0) {
    run_probes(0);
  }

  GradientEstimate batch = GradientEstimate::zeros(
      params.vocab_size(), params.hidden_size(), params.sentiment_size());
  for (std::size_t epoch = 1; epoch <= total_epochs; ++epoch) {
    shuffle_rng.shuffle(train_docs);
    double recon_l1 = 0.0;
    std::size_t processed = 0;
    std::size_t in_batch = 0;
    for (const std::size_t i : train_docs) {
      if (config.iterations_are_updates && updates_left == 0) {
        break;
      }
      const Document& doc = corpus.documents[i];
      const GradientEstimate grad =
          cd_step(params, doc, doc_sentiment(params, doc), config.cd_steps,
                  gibbs_rng);
      for (const double da : grad.visible_bias) {
        recon_l1 += std::abs(da);
      }
      ++processed;
      if (config.batch_size == 1) {
        apply_update(params, grad, config.learning_rate);
      } else {
        batch.accumulate(grad);
        if (++in_batch == config.batch_size) {
          batch.scale(1.0 / static_cast<double>(in_batch));
          apply_update(params, batch, config.learning_rate);
          batch.scale(0.0);
          in_batch = 0;
        }
      }
      if (config.iterations_are_updates) {
        --updates_left;
      }
    }
    if (in_batch > 0) {
      batch.scale(1.0 / static_cast<double>(in_batch));
      apply_update(params, batch, config.learning_rate);
      batch.scale(0.0);
    }
    if (processed > 0) {
      log.add(epoch, -1, "recon_l1",
              recon_l1 / static_cast<double>(processed));
    }
    const bool last = epoch == total_epochs;
    if (config.probe_interval > 0 &&
        (epoch % config.probe_interval == 0 || last)) {
      run_probes(epoch);
    }
  }

  return {std::move(params), std::move(log)};
}

}  // namespace sentopic
