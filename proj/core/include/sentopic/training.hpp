#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentopic/corpus.hpp"
#include "sentopic/model.hpp"

namespace sentopic {

enum class ModelKind { replicated_softmax, joint };

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t iterations = 1000;  // epochs over the training subset
  // When set, `iterations` counts single-document updates instead of epochs.
  bool iterations_are_updates = false;
  std::size_t batch_size = 1;
  std::size_t cd_steps = 1;   // k in CD-k
  double init_sigma = 1.0;    // Gaussian std for W, U, a, c; b starts at zero
  std::uint64_t seed = 0;
  std::size_t hidden_units = 10;
  // Epochs between probe-callback invocations; 0 disables probes. Probes
  // also fire before the first epoch and after the last one.
  std::size_t probe_interval = 0;
};

struct GradientEstimate {
  Matrix visible_hidden;               // K x H
  Matrix sentiment_hidden;             // S x H
  std::vector<double> visible_bias;    // K
  std::vector<double> hidden_bias;     // H
  std::vector<double> sentiment_bias;  // S

  static GradientEstimate zeros(std::size_t vocab_size,
                                std::size_t hidden_size,
                                std::size_t sentiment_size);
  void accumulate(const GradientEstimate& other, double scale = 1.0);
  void scale(double factor);

  // All blocks flattened into one vector (for cosine/norm diagnostics).
  std::vector<double> flatten() const;
};

// W, U, a, c ~ N(0, init_sigma^2) from the seeded "init" stream; b = 0.
// sentiment_size = 0 builds baseline-mode parameters.
ModelParams init_params(std::size_t vocab_size, std::size_t hidden_size,
                        std::size_t sentiment_size, const TrainConfig& config);

// One CD-k gradient estimate for a single document. Positive statistics use
// the data-clamped hidden probabilities; the negative chain alternates
// hidden samples with (document, sentiment) reconstructions k times, and the
// negative statistics use the final hidden probabilities. The reconstruction
// keeps the document's length; the sentiment is re-sampled from the model
// rather than clamped. Throws on an empty document.
GradientEstimate cd_step(const ModelParams& params, const Document& doc,
                         std::optional<std::size_t> sentiment, std::size_t k,
                         Rng& rng);

// Exact gradient of sum_n log p(v_n, s_n) (or log p(v_n) in baseline mode)
// by enumerating the model expectation per distinct document length. Test
// oracle; subject to the same enumeration bound as exact_log_z.
GradientEstimate exact_gradient(const ModelParams& params,
                                std::span<const Document> docs);

// The log likelihood the exact gradient differentiates.
double exact_log_likelihood(const ModelParams& params,
                            std::span<const Document> docs);

// theta <- theta + learning_rate * grad (plain ascent, no momentum or weight
// decay). Throws NumericError if any parameter becomes non-finite.
void apply_update(ModelParams& params, const GradientEstimate& grad,
                  double learning_rate);

struct TrainLogRow {
  std::size_t epoch = 0;
  std::int64_t doc_index = -1;  // -1 for epoch-level metrics
  std::string metric;
  double value = 0.0;
};

struct TrainLog {
  std::vector<TrainLogRow> rows;
  void add(std::size_t epoch, std::int64_t doc_index, std::string metric,
           double value);
};

// CSV columns: epoch,doc_index,metric_name,value. `header_lines` are written
// first, one comment line per entry.
void write_train_log_csv(const TrainLog& log, const std::filesystem::path& path,
                         std::span<const std::string> header_lines);

using ProbeCallback =
    std::function<void(std::size_t epoch, const ModelParams& params,
                       TrainLog& log)>;

struct TrainResult {
  ModelParams params;
  TrainLog log;
};

// Seeded CD training over the corpus train split. Document order reshuffles
// every epoch; empty documents are skipped (logged once); joint mode
// requires every training document to carry a sentiment label. Gradients
// are averaged within a batch. The per-epoch mean reconstruction L1 error
// is logged as metric "recon_l1".
TrainResult train(const Corpus& corpus, const TrainConfig& config,
                  ModelKind kind,
                  std::span<const ProbeCallback> callbacks = {});

}  // namespace sentopic
