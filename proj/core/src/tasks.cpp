#include "sentopic/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sentopic/errors.hpp"
#include "sentopic/numerics.hpp"
#include "sentopic/parallel.hpp"

namespace sentopic {

Classification classify_sentiment(const ModelParams& params,
                                  const Document& doc) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "classify_sentiment requires joint-mode parameters");
  }
  const std::vector<double> hidden = hidden_given_v(params, doc);
  Classification result;
  result.probs = sentiment_softmax(params, hidden);
  result.label = 0;
  for (std::size_t l = 1; l < result.probs.size(); ++l) {
    if (result.probs[l] > result.probs[result.label]) {
      result.label = l;
    }
  }
  return result;
}

std::size_t count_baseline(const Document& doc, const LexiconOverlap& overlap,
                           bool tie_positive) {
  std::uint64_t positive = 0, negative = 0;
  for (const std::size_t idx : overlap.positive) {
    positive += doc.count_at(static_cast<std::uint32_t>(idx));
  }
  for (const std::size_t idx : overlap.negative) {
    negative += doc.count_at(static_cast<std::uint32_t>(idx));
  }
  if (positive == negative) {
    return tie_positive ? 1 : 0;
  }
  return positive > negative ? 1 : 0;
}

std::size_t count_baseline(const Document& doc, const Vocabulary& vocab,
                           const SentimentLexicon& lexicon,
                           bool tie_positive) {
  return count_baseline(doc, lexicon_intersection(vocab, lexicon),
                        tie_positive);
}

std::vector<double> hidden_representation(const ModelParams& params,
                                          const Document& doc) {
  return hidden_given_v(params, doc);
}

Matrix hidden_representations(const ModelParams& params,
                              std::span<const Document> docs,
                              std::size_t threads) {
  Matrix reps(docs.size(), params.hidden_size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    const auto rep = hidden_given_v(params, docs[i]);
    std::copy(rep.begin(), rep.end(), reps.row(i).begin());
  });
  return reps;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<RankedDoc> rank_by_cosine(std::span<const double> query,
                                      const Matrix& train_reps) {
  std::vector<RankedDoc> ranked(train_reps.rows());
  for (std::size_t i = 0; i < train_reps.rows(); ++i) {
    ranked[i] = {i, cosine_similarity(query, train_reps.row(i))};
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedDoc& a, const RankedDoc& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.index < b.index;
            });
  return ranked;
}

std::vector<RankedDoc> retrieve(const Document& query, const Corpus& train,
                                const ModelParams& params) {
  const auto train_docs = train.docs_in(Split::train);
  Matrix reps(train_docs.size(), params.hidden_size());
  for (std::size_t i = 0; i < train_docs.size(); ++i) {
    const auto rep = hidden_given_v(params, *train_docs[i]);
    std::copy(rep.begin(), rep.end(), reps.row(i).begin());
  }
  return rank_by_cosine(hidden_given_v(params, query), reps);
}

PRCurve pr_curve(const Matrix& test_reps,
                 std::span<const std::uint32_t> test_topics,
                 const Matrix& train_reps,
                 std::span<const std::uint32_t> train_topics,
                 std::span<const std::size_t> k_grid, std::size_t threads) {
  if (test_reps.rows() != test_topics.size() ||
      train_reps.rows() != train_topics.size()) {
    throw std::invalid_argument("pr_curve: representation/topic size mismatch");
  }
  if (train_reps.rows() == 0 || test_reps.rows() == 0) {
    throw DataError("pr_curve: empty train or test set");
  }

  std::vector<std::size_t> depths;
  for (const std::size_t k : k_grid) {
    depths.push_back(std::min(k, train_reps.rows()));
  }
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  depths.erase(std::remove(depths.begin(), depths.end(), std::size_t{0}),
               depths.end());
  if (depths.empty()) {
    throw std::invalid_argument("pr_curve: k grid is empty");
  }

  std::vector<std::size_t> relevant_total(test_reps.rows(), 0);
  for (std::size_t q = 0; q < test_reps.rows(); ++q) {
    for (const std::uint32_t t : train_topics) {
      relevant_total[q] += t == test_topics[q] ? 1 : 0;
    }
  }

  // per query x depth precision/recall; averaged afterwards
  Matrix precision(test_reps.rows(), depths.size());
  Matrix recall(test_reps.rows(), depths.size());
  std::vector<bool> usable(test_reps.rows(), false);

  parallel_for(test_reps.rows(), threads, [&](std::size_t q) {
    if (relevant_total[q] == 0) {
      return;  // no relevant train docs: query is skipped
    }
    usable[q] = true;
    const auto ranked = rank_by_cosine(test_reps.row(q), train_reps);
    std::size_t hits = 0;
    std::size_t depth_idx = 0;
    for (std::size_t r = 0; r < ranked.size() && depth_idx < depths.size();
         ++r) {
      hits += train_topics[ranked[r].index] == test_topics[q] ? 1 : 0;
      while (depth_idx < depths.size() && r + 1 == depths[depth_idx]) {
        precision(q, depth_idx) =
            static_cast<double>(hits) / static_cast<double>(depths[depth_idx]);
        recall(q, depth_idx) = static_cast<double>(hits) /
                               static_cast<double>(relevant_total[q]);
        ++depth_idx;
      }
    }
  });

  const std::size_t queries =
      static_cast<std::size_t>(std::count(usable.begin(), usable.end(), true));
  if (queries == 0) {
    throw DataError("pr_curve: no test query has a relevant train document");
  }

  PRCurve curve;
  for (std::size_t d = 0; d < depths.size(); ++d) {
    double mean_precision = 0.0, mean_recall = 0.0;
    for (std::size_t q = 0; q < test_reps.rows(); ++q) {
      if (!usable[q]) {
        continue;
      }
      mean_precision += precision(q, d);
      mean_recall += recall(q, d);
    }
    curve.points.push_back({depths[d],
                            mean_recall / static_cast<double>(queries),
                            mean_precision / static_cast<double>(queries)});
  }
  return curve;
}

PRCurve pr_curve(const Corpus& corpus, const ModelParams& params,
                 std::span<const std::size_t> k_grid, std::size_t threads) {
  std::vector<Document> train_docs, test_docs;
  std::vector<std::uint32_t> train_topics, test_topics;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const Document& doc = corpus.documents[i];
    if (!doc.topic) {
      throw DataError("pr_curve: document " + std::to_string(i) +
                      " has no topic label");
    }
    if (corpus.split[i] == Split::train) {
      train_docs.push_back(doc);
      train_topics.push_back(*doc.topic);
    } else {
      test_docs.push_back(doc);
      test_topics.push_back(*doc.topic);
    }
  }
  const Matrix train_reps = hidden_representations(params, train_docs,
                                                   threads);
  const Matrix test_reps = hidden_representations(params, test_docs, threads);
  return pr_curve(test_reps, test_topics, train_reps, train_topics, k_grid,
                  threads);
}

TopicSentimentReport topic_sentiment_report(const ModelParams& params,
                                            const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon) {
  if (!params.joint() || params.sentiment_size() != 2) {
    throw std::invalid_argument(
        "topic_sentiment_report requires joint parameters with S = 2 "
        "(0 = negative, 1 = positive)");
  }
  if (vocab.size() != params.vocab_size()) {
    throw std::invalid_argument(
        "topic_sentiment_report: vocabulary size does not match the model");
  }
  const LexiconOverlap overlap = lexicon_intersection(vocab, lexicon);
  if (overlap.positive.empty() || overlap.negative.empty()) {
    throw DataError(
        "topic_sentiment_report: lexicon shares no positive or no negative "
        "words with the vocabulary");
  }

  const std::size_t hidden_size = params.hidden_size();
  TopicSentimentReport report;
  report.per_topic.resize(hidden_size);
  for (std::size_t j = 0; j < hidden_size; ++j) {
    auto& row = report.per_topic[j];
    row.topic = j;
    for (const std::size_t k : overlap.positive) {
      row.positive_mass += params.visible_hidden(k, j);
    }
    for (const std::size_t k : overlap.negative) {
      row.negative_mass += params.visible_hidden(k, j);
    }
  }

  // Step 2: order topics by (positive - negative) mass, descending;
  // deterministic index tie-break.
  std::vector<std::size_t> order(hidden_size);
  std::iota(order.begin(), order.end(), 0);
  auto diff = [&](std::size_t j) {
    return report.per_topic[j].positive_mass -
           report.per_topic[j].negative_mass;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (diff(a) != diff(b)) {
      return diff(a) > diff(b);
    }
    return a < b;
  });
  report.degenerate =
      hidden_size > 1 && diff(order.front()) == diff(order.back());

  // Step 3: tag the extremes (5 per side, floor(H/2) when H < 10).
  report.tags_per_side = hidden_size < 10 ? hidden_size / 2 : 5;
  for (std::size_t r = 0; r < report.tags_per_side; ++r) {
    report.per_topic[order[r]].tag = 1;
    report.per_topic[order[hidden_size - 1 - r]].tag = -1;
  }

  // Step 4: a positive tag agrees when the sentiment layer weighs the
  // positive unit more than the negative one for that topic.
  std::size_t tagged = 0, agreeing = 0;
  for (auto& row : report.per_topic) {
    if (row.tag == 0) {
      continue;
    }
    ++tagged;
    const double positive_weight = params.sentiment_hidden(1, row.topic);
    const double negative_weight = params.sentiment_hidden(0, row.topic);
    row.agrees = row.tag > 0 ? positive_weight > negative_weight
                             : negative_weight > positive_weight;
    agreeing += row.agrees ? 1 : 0;
  }
  report.precision =
      tagged == 0 ? 0.0
                  : static_cast<double>(agreeing) / static_cast<double>(tagged);
  return report;
}

MlpClassifier MlpClassifier::warm_start(const ModelParams& params,
                                        double mean_doc_length) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "MlpClassifier::warm_start requires joint-mode parameters");
  }
  MlpClassifier mlp;
  mlp.input_hidden = params.visible_hidden;
  mlp.hidden_bias = params.hidden_bias;
  for (double& b : mlp.hidden_bias) {
    b *= mean_doc_length;
  }
  mlp.hidden_output = params.sentiment_hidden;
  mlp.output_bias = params.sentiment_bias;
  return mlp;
}

MlpClassifier MlpClassifier::random_init(std::size_t vocab_size,
                                         std::size_t hidden_size,
                                         std::size_t output_size, double sigma,
                                         Rng& rng) {
  MlpClassifier mlp;
  mlp.input_hidden = Matrix(vocab_size, hidden_size);
  mlp.hidden_bias.assign(hidden_size, 0.0);
  mlp.hidden_output = Matrix(output_size, hidden_size);
  mlp.output_bias.assign(output_size, 0.0);
  for (double& w : mlp.input_hidden.flat()) {
    w = sigma * rng.normal();
  }
  for (double& w : mlp.hidden_output.flat()) {
    w = sigma * rng.normal();
  }
  for (double& b : mlp.output_bias) {
    b = sigma * rng.normal();
  }
  return mlp;
}

namespace {

std::vector<double> mlp_hidden_activation(const MlpClassifier& mlp,
                                          const Document& doc) {
  std::vector<double> pre(mlp.hidden_size());
  for (std::size_t j = 0; j < pre.size(); ++j) {
    pre[j] = mlp.hidden_bias[j];
  }
  for (const auto& [word, count] : doc.entries) {
    if (word >= mlp.vocab_size()) {
      throw std::invalid_argument("mlp: document word index out of range");
    }
    const auto row = mlp.input_hidden.row(word);
    const double c = static_cast<double>(count);
    for (std::size_t j = 0; j < pre.size(); ++j) {
      pre[j] += c * row[j];
    }
  }
  for (double& z : pre) {
    z = std::tanh(z);
  }
  return pre;
}

std::vector<double> mlp_output_probs(const MlpClassifier& mlp,
                                     std::span<const double> hidden) {
  std::vector<double> logits(mlp.output_size());
  for (std::size_t l = 0; l < logits.size(); ++l) {
    double z = mlp.output_bias[l];
    const auto row = mlp.hidden_output.row(l);
    for (std::size_t j = 0; j < hidden.size(); ++j) {
      z += row[j] * hidden[j];
    }
    logits[l] = z;
  }
  softmax_inplace(logits);
  return logits;
}

}  // namespace

std::vector<double> MlpClassifier::forward(const Document& doc) const {
  return mlp_output_probs(*this, mlp_hidden_activation(*this, doc));
}

std::size_t MlpClassifier::classify(const Document& doc) const {
  const auto probs = forward(doc);
  std::size_t best = 0;
  for (std::size_t l = 1; l < probs.size(); ++l) {
    if (probs[l] > probs[best]) {
      best = l;
    }
  }
  return best;
}

double mlp_loss(const MlpClassifier& mlp, const Document& doc,
                std::size_t label) {
  const auto probs = mlp.forward(doc);
  return -std::log(std::max(probs[label], 1e-300));
}

MlpGradients mlp_gradients(const MlpClassifier& mlp, const Document& doc,
                           std::size_t label) {
  const std::vector<double> hidden = mlp_hidden_activation(mlp, doc);
  const std::vector<double> probs = mlp_output_probs(mlp, hidden);

  MlpGradients grads;
  grads.input_hidden = Matrix(mlp.vocab_size(), mlp.hidden_size());
  grads.hidden_bias.assign(mlp.hidden_size(), 0.0);
  grads.hidden_output = Matrix(mlp.output_size(), mlp.hidden_size());
  grads.output_bias.assign(mlp.output_size(), 0.0);

  // d loss / d output logits = probs - onehot(label)
  std::vector<double> delta_out(probs);
  delta_out[label] -= 1.0;
  for (std::size_t l = 0; l < mlp.output_size(); ++l) {
    auto row = grads.hidden_output.row(l);
    for (std::size_t j = 0; j < mlp.hidden_size(); ++j) {
      row[j] = delta_out[l] * hidden[j];
    }
    grads.output_bias[l] = delta_out[l];
  }

  std::vector<double> delta_hidden(mlp.hidden_size(), 0.0);
  for (std::size_t j = 0; j < mlp.hidden_size(); ++j) {
    double back = 0.0;
    for (std::size_t l = 0; l < mlp.output_size(); ++l) {
      back += mlp.hidden_output(l, j) * delta_out[l];
    }
    delta_hidden[j] = back * (1.0 - hidden[j] * hidden[j]);  // tanh'
    grads.hidden_bias[j] = delta_hidden[j];
  }
  for (const auto& [word, count] : doc.entries) {
    auto row = grads.input_hidden.row(word);
    const double c = static_cast<double>(count);
    for (std::size_t j = 0; j < mlp.hidden_size(); ++j) {
      row[j] += c * delta_hidden[j];
    }
  }
  return grads;
}

void mlp_train(MlpClassifier& mlp, std::span<const Document> docs,
               std::size_t epochs, double learning_rate, Rng& rng) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!docs[i].sentiment || *docs[i].sentiment >= mlp.output_size()) {
      throw DataError("mlp_train: document " + std::to_string(i) +
                      " lacks a valid sentiment label");
    }
    order.push_back(i);
  }
  if (order.empty()) {
    throw DataError("mlp_train: no training documents");
  }
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (const std::size_t i : order) {
      const Document& doc = docs[i];
      const MlpGradients grads = mlp_gradients(mlp, doc, *doc.sentiment);
      const double lr = -learning_rate;  // descent on the loss
      for (std::size_t idx = 0; idx < grads.input_hidden.flat().size();
           ++idx) {
        mlp.input_hidden.flat()[idx] += lr * grads.input_hidden.flat()[idx];
      }
      for (std::size_t j = 0; j < mlp.hidden_size(); ++j) {
        mlp.hidden_bias[j] += lr * grads.hidden_bias[j];
      }
      for (std::size_t idx = 0; idx < grads.hidden_output.flat().size();
           ++idx) {
        mlp.hidden_output.flat()[idx] += lr * grads.hidden_output.flat()[idx];
      }
      for (std::size_t l = 0; l < mlp.output_size(); ++l) {
        mlp.output_bias[l] += lr * grads.output_bias[l];
      }
    }
  }
}

double mlp_accuracy(const MlpClassifier& mlp, std::span<const Document> docs) {
  if (docs.empty()) {
    throw DataError("mlp_accuracy: empty evaluation set");
  }
  std::size_t correct = 0;
  for (const Document& doc : docs) {
    if (!doc.sentiment) {
      throw DataError("mlp_accuracy: document lacks a gold label");
    }
    correct += mlp.classify(doc) == *doc.sentiment ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

}  // namespace sentopic
