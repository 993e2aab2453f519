#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sentopic/corpus.hpp"
#include "sentopic/matrix.hpp"
#include "sentopic/model.hpp"
#include "sentopic/rng.hpp"

namespace sentopic {

struct Classification {
  std::size_t label = 0;
  std::vector<double> probs;
};

// Hidden probabilities from the document alone (label-free), fed as real
// values into the sentiment softmax; the argmax wins, lowest index on ties.
// Joint-mode parameters only.
Classification classify_sentiment(const ModelParams& params,
                                  const Document& doc);

// Count-weighted positive vs negative lexicon words; majority wins, ties go
// negative unless tie_positive is set. Returns 0 (negative) or 1 (positive).
std::size_t count_baseline(const Document& doc, const LexiconOverlap& overlap,
                           bool tie_positive = false);
std::size_t count_baseline(const Document& doc, const Vocabulary& vocab,
                           const SentimentLexicon& lexicon,
                           bool tie_positive = false);

// Retrieval embedding: the hidden probabilities given the document.
std::vector<double> hidden_representation(const ModelParams& params,
                                          const Document& doc);
// One row per document.
Matrix hidden_representations(const ModelParams& params,
                              std::span<const Document> docs,
                              std::size_t threads = 1);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct RankedDoc {
  std::size_t index = 0;  // row in the train representation matrix
  double similarity = 0.0;
};

// Train rows ranked by cosine similarity to the query, descending, ties by
// ascending index. Zero-norm vectors have similarity 0 against anything.
std::vector<RankedDoc> rank_by_cosine(std::span<const double> query,
                                      const Matrix& train_reps);

// Convenience form of the above over corpora and model parameters.
std::vector<RankedDoc> retrieve(const Document& query, const Corpus& train,
                                const ModelParams& params);

struct PRCurve {
  struct Point {
    std::size_t k = 0;
    double recall = 0.0;
    double precision = 0.0;
  };
  std::vector<Point> points;
};

// Precision/recall at each retrieval depth, averaged over all test queries.
// Relevance is topic-label equality. Depths beyond the train size are
// truncated; queries whose topic is absent from the train set are skipped.
PRCurve pr_curve(const Matrix& test_reps,
                 std::span<const std::uint32_t> test_topics,
                 const Matrix& train_reps,
                 std::span<const std::uint32_t> train_topics,
                 std::span<const std::size_t> k_grid, std::size_t threads = 1);

// Full pipeline: embeds both splits of the corpus with the model and runs
// the averaged precision/recall evaluation.
PRCurve pr_curve(const Corpus& corpus, const ModelParams& params,
                 std::span<const std::size_t> k_grid, std::size_t threads = 1);

struct TopicSentimentReport {
  struct Row {
    std::size_t topic = 0;
    double positive_mass = 0.0;
    double negative_mass = 0.0;
    int tag = 0;  // +1 positive, -1 negative, 0 untagged
    bool agrees = false;
  };
  std::vector<Row> per_topic;   // in topic (hidden unit) order
  double precision = 0.0;       // agreeing fraction of tagged topics
  std::size_t tags_per_side = 0;
  bool degenerate = false;      // all mass differences equal (e.g. W = 0)
};

// Tags the five most positive and five most negative topics by lexicon word
// mass in W (fewer when H < 10: floor(H/2) per side) and checks each tag
// against the sentiment-layer weights (positive tag expects
// U[positive] > U[negative] for that topic). Requires joint parameters with
// S = 2 and a lexicon overlap with both polarities present.
TopicSentimentReport topic_sentiment_report(const ModelParams& params,
                                            const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon);

// Two-layer classifier (tanh hidden layer, softmax output) trained with
// cross-entropy SGD; can be warm-started from trained model parameters.
struct MlpClassifier {
  Matrix input_hidden;                 // K x H
  std::vector<double> hidden_bias;     // H
  Matrix hidden_output;                // S x H
  std::vector<double> output_bias;     // S

  std::size_t vocab_size() const { return input_hidden.rows(); }
  std::size_t hidden_size() const { return hidden_bias.size(); }
  std::size_t output_size() const { return output_bias.size(); }

  // Copies W and U; the per-document bias scaling D*b has no MLP analogue,
  // so the hidden bias is scaled by the mean training-document length.
  static MlpClassifier warm_start(const ModelParams& params,
                                  double mean_doc_length);
  static MlpClassifier random_init(std::size_t vocab_size,
                                   std::size_t hidden_size,
                                   std::size_t output_size, double sigma,
                                   Rng& rng);

  std::vector<double> forward(const Document& doc) const;
  std::size_t classify(const Document& doc) const;
};

struct MlpGradients {
  Matrix input_hidden;
  std::vector<double> hidden_bias;
  Matrix hidden_output;
  std::vector<double> output_bias;
};

// Cross-entropy loss -log p(label | doc) and its gradients, exposed for
// finite-difference checks.
double mlp_loss(const MlpClassifier& mlp, const Document& doc,
                std::size_t label);
MlpGradients mlp_gradients(const MlpClassifier& mlp, const Document& doc,
                           std::size_t label);

// Per-document SGD with epoch-wise reshuffling under the rng. Documents must
// carry sentiment labels.
void mlp_train(MlpClassifier& mlp, std::span<const Document> docs,
               std::size_t epochs, double learning_rate, Rng& rng);

// Fraction of documents whose argmax matches the gold sentiment label.
double mlp_accuracy(const MlpClassifier& mlp, std::span<const Document> docs);

}  // namespace sentopic
