#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sentopic/document.hpp"
#include "sentopic/matrix.hpp"
#include "sentopic/rng.hpp"

namespace sentopic {

// Parameters of the replicated-softmax document model, optionally extended
// with a multinomial sentiment layer wired to the hidden units. Baseline
// mode has no sentiment layer (S = 0, empty sentiment blocks); joint mode
// has S >= 1.
//
// A document enters the energy only through its count vector and its length
// D, which scales the hidden bias; each document length therefore defines
// its own normalizer.
struct ModelParams {
  Matrix visible_hidden;              // K x H
  Matrix sentiment_hidden;            // S x H, empty in baseline mode
  std::vector<double> visible_bias;   // K
  std::vector<double> hidden_bias;    // H
  std::vector<double> sentiment_bias; // S, empty in baseline mode

  std::size_t vocab_size() const { return visible_bias.size(); }
  std::size_t hidden_size() const { return hidden_bias.size(); }
  std::size_t sentiment_size() const { return sentiment_bias.size(); }
  bool joint() const { return sentiment_size() > 0; }

  static ModelParams zeros(std::size_t vocab_size, std::size_t hidden_size,
                           std::size_t sentiment_size);

  // Throws NumericError if any entry is NaN or infinite.
  void check_finite() const;
};

// Total input to hidden unit j: D*b_j + sum_k W_kj v_k (+ sum_l U_lj s_l in
// joint mode with a sentiment given). The building block for the hidden
// conditional and the free energy.
std::vector<double> hidden_inputs(const ModelParams& params,
                                  const Document& doc,
                                  std::optional<std::size_t> sentiment);

// E(v, s, h) for joint-mode parameters; `hidden` is a binary vector.
double energy(const ModelParams& params, const Document& doc,
              std::size_t sentiment, std::span<const double> hidden);
// Baseline-mode energy (no sentiment layer).
double energy(const ModelParams& params, const Document& doc,
              std::span<const double> hidden);

// p(h_j = 1 | v, s): joint mode only.
std::vector<double> hidden_given_vs(const ModelParams& params,
                                    const Document& doc,
                                    std::size_t sentiment);

// p(h_j = 1 | v): valid in both modes (the sentiment layer is not used).
std::vector<double> hidden_given_v(const ModelParams& params,
                                   const Document& doc);

// Per-word softmax p(w | h) over the vocabulary; `hidden` may be binary or
// real-valued.
std::vector<double> visible_softmax(const ModelParams& params,
                                    std::span<const double> hidden);

// Sentiment softmax p(s_l = 1 | h); joint mode only.
std::vector<double> sentiment_softmax(const ModelParams& params,
                                      std::span<const double> hidden);

// Reconstructs a document of the given length as `length` independent draws
// from visible_softmax (a multinomial), preserving D.
Document sample_document(const ModelParams& params,
                         std::span<const double> hidden, std::uint32_t length,
                         Rng& rng);

std::size_t sample_sentiment(std::span<const double> probs, Rng& rng);
std::vector<double> sample_hidden(std::span<const double> probs, Rng& rng);

// log sum_h exp(-E): the hidden layer summed out in closed form
// (softplus per unit). Unnormalized log probability of (v, s) or of v.
double free_energy(const ModelParams& params, const Document& doc,
                   std::size_t sentiment);
double free_energy(const ModelParams& params, const Document& doc);

// Unnormalized log p(v): marginalizes the sentiment layer in joint mode,
// plain free energy in baseline mode.
double free_energy_marginal(const ModelParams& params, const Document& doc);

// Binary model container, magic "SNTOPIC1" + version + dimensions + blocks;
// round-trips bit-exactly. Layout documented in the README.
void save_model(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_model(const std::filesystem::path& path);

}  // namespace sentopic
