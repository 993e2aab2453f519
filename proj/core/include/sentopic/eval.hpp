#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sentopic/model.hpp"

namespace sentopic {

// The normalizer is conditional on document length D because the energy
// scales the hidden bias by D: each length is its own model.
struct PartitionEstimate {
  enum class Method { exact, ais };
  double log_z = 0.0;
  Method method = Method::exact;
  std::size_t ais_runs = 0;
  double log_z_stderr = 0.0;
  std::uint32_t doc_length = 0;
};

// Largest count-vector-space size (times S in joint mode) accepted by the
// exact enumeration.
inline constexpr std::uint64_t kEnumerationBound = 1'000'000;

// Exact log Z(D) by enumerating count vectors (each weighted by its
// multinomial sequence multiplicity) and sentiment values; hidden units are
// summed out analytically. Throws NumericError above kEnumerationBound,
// advising AIS. With `clamp_sentiment` set, computes the normalizer of
// p(v | s) instead (no sentiment sum).
PartitionEstimate exact_log_z(
    const ModelParams& params, std::uint32_t length,
    std::optional<std::size_t> clamp_sentiment = std::nullopt);

// Annealed importance sampling estimate of log Z(D), annealing all
// parameters from the zero model (whose log Z is D log K + log S + H log 2)
// to the target along a geometric inverse-temperature ladder in (0, 1].
// Returns the mean estimate and a bootstrap standard error over runs.
PartitionEstimate ais_log_z(
    const ModelParams& params, std::uint32_t length, std::size_t runs,
    std::size_t temperatures, Rng& rng, std::size_t threads = 1,
    std::optional<std::size_t> clamp_sentiment = std::nullopt);

struct PerplexityReport {
  std::vector<double> per_doc_log_p;
  std::uint64_t total_words = 0;
  double perplexity = 0.0;
};

// Per-document sequence-level log probability and the corpus perplexity
// exp(-sum log p / sum D). Joint-mode parameters marginalize the sentiment
// layer, so the protocol is label-free; `log_z_by_length` must cover every
// document length. Lower is better.
PerplexityReport perplexity(
    const ModelParams& params, std::span<const Document> docs,
    const std::map<std::uint32_t, double>& log_z_by_length);

// Variant conditioning on each document's gold sentiment label:
// log p(v | s*) = F(v, s*) - log Z_{s*}(D). The table maps a length to the
// per-label clamped normalizers (size S). Every document needs a label.
PerplexityReport perplexity_given_sentiment(
    const ModelParams& params, std::span<const Document> docs,
    const std::map<std::uint32_t, std::vector<double>>& log_z_by_length_label);

// Distinct document lengths, optionally reduced to at most `max_buckets`
// geometrically spaced representatives (0 = no bucketing). The returned map
// sends every distinct length to the length whose log Z stands in for it.
std::map<std::uint32_t, std::uint32_t> bucket_lengths(
    std::span<const Document> docs, std::size_t max_buckets);

struct ZEstimatorConfig {
  bool use_ais = true;
  std::size_t ais_runs = 100;
  std::size_t ais_temperatures = 1000;
  std::size_t max_buckets = 0;  // 0: one estimate per distinct length
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Builds the log Z(D) table covering every distinct document length.
std::map<std::uint32_t, double> log_z_for_docs(const ModelParams& params,
                                               std::span<const Document> docs,
                                               const ZEstimatorConfig& config);

// Clamped-sentiment variant: one normalizer per (length, label).
std::map<std::uint32_t, std::vector<double>> log_z_for_docs_by_label(
    const ModelParams& params, std::span<const Document> docs,
    const ZEstimatorConfig& config);

}  // namespace sentopic
