#include "sentopic/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sentopic/enumeration.hpp"
#include "sentopic/errors.hpp"
#include "sentopic/numerics.hpp"
#include "sentopic/parallel.hpp"

namespace sentopic {

PartitionEstimate exact_log_z(const ModelParams& params, std::uint32_t length,
                              std::optional<std::size_t> clamp_sentiment) {
  const std::size_t vocab_size = params.vocab_size();
  const std::uint64_t vectors = count_vector_space_size(vocab_size, length);
  const std::uint64_t sentiment_factor =
      (params.joint() && !clamp_sentiment) ? params.sentiment_size() : 1;
  if (vectors > kEnumerationBound / std::max<std::uint64_t>(sentiment_factor, 1)) {
    throw NumericError(
        "exact_log_z: state space too large to enumerate (" +
        std::to_string(vectors) + " count vectors x S=" +
        std::to_string(sentiment_factor) + " > " +
        std::to_string(kEnumerationBound) + "); use ais_log_z instead");
  }

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(vectors * sentiment_factor));
  for_each_count_vector(
      vocab_size, length, [&](std::span<const std::uint32_t> counts) {
        const Document doc = make_document(counts);
        const double log_mult = log_multinomial_coefficient(counts);
        if (!params.joint()) {
          terms.push_back(log_mult + free_energy(params, doc));
        } else if (clamp_sentiment) {
          terms.push_back(log_mult +
                          free_energy(params, doc, *clamp_sentiment));
        } else {
          for (std::size_t s = 0; s < params.sentiment_size(); ++s) {
            terms.push_back(log_mult + free_energy(params, doc, s));
          }
        }
      });

  PartitionEstimate estimate;
  estimate.log_z = log_sum_exp(terms);
  estimate.method = PartitionEstimate::Method::exact;
  estimate.doc_length = length;
  return estimate;
}

namespace {

// F at inverse temperature beta for the document captured by `inputs` (the
// unscaled hidden inputs) and `bias_sum` (the unscaled visible + sentiment
// bias contribution): beta * bias_sum + sum_j softplus(beta * x_j).
double scaled_free_energy(double beta, std::span<const double> inputs,
                          double bias_sum) {
  double value = beta * bias_sum;
  for (const double x : inputs) {
    value += softplus(beta * x);
  }
  return value;
}

double zero_model_log_z(const ModelParams& params, std::uint32_t length,
                        bool clamped) {
  double log_z = static_cast<double>(length) *
                 std::log(static_cast<double>(params.vocab_size()));
  if (params.joint() && !clamped) {
    log_z += std::log(static_cast<double>(params.sentiment_size()));
  }
  log_z += static_cast<double>(params.hidden_size()) * std::log(2.0);
  return log_z;
}

}  // namespace

PartitionEstimate ais_log_z(const ModelParams& params, std::uint32_t length,
                            std::size_t runs, std::size_t temperatures,
                            Rng& rng, std::size_t threads,
                            std::optional<std::size_t> clamp_sentiment) {
  if (runs < 10 || temperatures < 100) {
    throw std::invalid_argument(
        "ais_log_z: needs at least 10 runs and 100 temperatures");
  }
  const std::size_t vocab_size = params.vocab_size();
  const std::size_t hidden_size = params.hidden_size();
  const bool sample_sentiments = params.joint() && !clamp_sentiment;

  // Geometric ladder beta_1 .. beta_T in (0, 1], preceded by beta_0 = 0.
  constexpr double kBetaFloor = 1e-4;
  std::vector<double> betas(temperatures);
  if (temperatures == 1) {
    betas[0] = 1.0;
  } else {
    const double ratio = std::pow(1.0 / kBetaFloor,
                                  1.0 / static_cast<double>(temperatures - 1));
    for (std::size_t t = 0; t < temperatures; ++t) {
      betas[t] = kBetaFloor * std::pow(ratio, static_cast<double>(t));
    }
    betas.back() = 1.0;
  }

  std::vector<std::uint64_t> run_seeds(runs);
  for (auto& s : run_seeds) {
    s = rng.next_u64();
  }

  const std::vector<double> uniform_words(vocab_size,
                                          1.0 / static_cast<double>(vocab_size));
  std::vector<double> log_weights(runs, 0.0);

  parallel_for(runs, threads, [&](std::size_t r) {
    Rng run_rng(run_seeds[r], "ais-run");
    Document doc =
        make_document(run_rng.multinomial(length, uniform_words));
    std::size_t sentiment =
        clamp_sentiment ? *clamp_sentiment
                        : (params.joint()
                               ? run_rng.uniform_index(params.sentiment_size())
                               : 0);

    double log_w = 0.0;
    double prev_beta = 0.0;
    std::vector<double> hidden(hidden_size);
    for (const double beta : betas) {
      const std::optional<std::size_t> sent_opt =
          params.joint() ? std::optional<std::size_t>(sentiment)
                         : std::nullopt;
      const std::vector<double> inputs = hidden_inputs(params, doc, sent_opt);
      double bias_sum = 0.0;
      for (const auto& [word, count] : doc.entries) {
        bias_sum += static_cast<double>(count) * params.visible_bias[word];
      }
      if (params.joint()) {
        bias_sum += params.sentiment_bias[sentiment];
      }
      log_w += scaled_free_energy(beta, inputs, bias_sum) -
               scaled_free_energy(prev_beta, inputs, bias_sum);

      // Blocked Gibbs transition at this temperature: h | (v, s), then
      // v | h and s | h, all with parameters scaled by beta.
      for (std::size_t j = 0; j < hidden_size; ++j) {
        hidden[j] = run_rng.bernoulli(sigmoid(beta * inputs[j])) ? 1.0 : 0.0;
      }
      std::vector<double> word_logits(vocab_size);
      for (std::size_t k = 0; k < vocab_size; ++k) {
        double z = params.visible_bias[k];
        const auto row = params.visible_hidden.row(k);
        for (std::size_t j = 0; j < hidden_size; ++j) {
          z += row[j] * hidden[j];
        }
        word_logits[k] = beta * z;
      }
      softmax_inplace(word_logits);
      doc = make_document(run_rng.multinomial(length, word_logits));
      if (sample_sentiments) {
        std::vector<double> sent_logits(params.sentiment_size());
        for (std::size_t l = 0; l < params.sentiment_size(); ++l) {
          double z = params.sentiment_bias[l];
          const auto row = params.sentiment_hidden.row(l);
          for (std::size_t j = 0; j < hidden_size; ++j) {
            z += row[j] * hidden[j];
          }
          sent_logits[l] = beta * z;
        }
        softmax_inplace(sent_logits);
        sentiment = run_rng.categorical(sent_logits);
      }
      prev_beta = beta;
    }
    log_weights[r] = log_w;
  });

  const double base =
      zero_model_log_z(params, length, clamp_sentiment.has_value());
  PartitionEstimate estimate;
  estimate.method = PartitionEstimate::Method::ais;
  estimate.ais_runs = runs;
  estimate.doc_length = length;
  estimate.log_z = base + log_sum_exp(log_weights) -
                   std::log(static_cast<double>(runs));

  // Bootstrap standard error over runs.
  constexpr std::size_t kBootstrap = 200;
  Rng boot_rng = rng.derive("ais-bootstrap");
  std::vector<double> resample(runs);
  std::vector<double> estimates(kBootstrap);
  for (std::size_t b = 0; b < kBootstrap; ++b) {
    for (std::size_t r = 0; r < runs; ++r) {
      resample[r] = log_weights[boot_rng.uniform_index(runs)];
    }
    estimates[b] = base + log_sum_exp(resample) -
                   std::log(static_cast<double>(runs));
  }
  const auto [min_it, max_it] =
      std::minmax_element(estimates.begin(), estimates.end());
  if (*min_it == *max_it) {
    estimate.log_z_stderr = 0.0;
    return estimate;
  }
  double mean = 0.0;
  for (const double e : estimates) {
    mean += e;
  }
  mean /= static_cast<double>(kBootstrap);
  double var = 0.0;
  for (const double e : estimates) {
    var += (e - mean) * (e - mean);
  }
  estimate.log_z_stderr = std::sqrt(var / static_cast<double>(kBootstrap - 1));
  return estimate;
}

PerplexityReport perplexity(
    const ModelParams& params, std::span<const Document> docs,
    const std::map<std::uint32_t, double>& log_z_by_length) {
  PerplexityReport report;
  report.per_doc_log_p.reserve(docs.size());
  double total_log_p = 0.0;
  for (const Document& doc : docs) {
    const auto it = log_z_by_length.find(doc.length);
    if (it == log_z_by_length.end()) {
      throw DataError("perplexity: no log Z entry for document length " +
                      std::to_string(doc.length));
    }
    const double log_p = free_energy_marginal(params, doc) - it->second;
    report.per_doc_log_p.push_back(log_p);
    total_log_p += log_p;
    report.total_words += doc.length;
  }
  if (report.total_words == 0) {
    throw DataError("perplexity: no words in the evaluation set");
  }
  report.perplexity =
      std::exp(-total_log_p / static_cast<double>(report.total_words));
  return report;
}

PerplexityReport perplexity_given_sentiment(
    const ModelParams& params, std::span<const Document> docs,
    const std::map<std::uint32_t, std::vector<double>>&
        log_z_by_length_label) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "perplexity_given_sentiment requires joint-mode parameters");
  }
  PerplexityReport report;
  report.per_doc_log_p.reserve(docs.size());
  double total_log_p = 0.0;
  for (const Document& doc : docs) {
    if (!doc.sentiment || *doc.sentiment >= params.sentiment_size()) {
      throw DataError(
          "perplexity_given_sentiment: document lacks a valid gold label");
    }
    const auto it = log_z_by_length_label.find(doc.length);
    if (it == log_z_by_length_label.end() ||
        it->second.size() != params.sentiment_size()) {
      throw DataError("perplexity_given_sentiment: no log Z entry for length " +
                      std::to_string(doc.length));
    }
    const double log_p = free_energy(params, doc, *doc.sentiment) -
                         it->second[*doc.sentiment];
    report.per_doc_log_p.push_back(log_p);
    total_log_p += log_p;
    report.total_words += doc.length;
  }
  if (report.total_words == 0) {
    throw DataError("perplexity: no words in the evaluation set");
  }
  report.perplexity =
      std::exp(-total_log_p / static_cast<double>(report.total_words));
  return report;
}

std::map<std::uint32_t, std::uint32_t> bucket_lengths(
    std::span<const Document> docs, std::size_t max_buckets) {
  std::set<std::uint32_t> lengths;
  for (const Document& doc : docs) {
    lengths.insert(doc.length);
  }
  std::map<std::uint32_t, std::uint32_t> mapping;
  if (lengths.empty()) {
    return mapping;
  }
  if (max_buckets == 0 || lengths.size() <= max_buckets) {
    for (const std::uint32_t d : lengths) {
      mapping[d] = d;
    }
    return mapping;
  }
  const double lo = static_cast<double>(*lengths.begin());
  const double hi = static_cast<double>(*lengths.rbegin());
  std::vector<double> reps;
  for (std::size_t b = 0; b < max_buckets; ++b) {
    const double frac = max_buckets == 1
                            ? 0.0
                            : static_cast<double>(b) /
                                  static_cast<double>(max_buckets - 1);
    reps.push_back(lo * std::pow(hi / lo, frac));
  }
  for (const std::uint32_t d : lengths) {
    double best = reps[0];
    for (const double r : reps) {
      if (std::abs(std::log(static_cast<double>(d)) - std::log(r)) <
          std::abs(std::log(static_cast<double>(d)) - std::log(best))) {
        best = r;
      }
    }
    mapping[d] = static_cast<std::uint32_t>(std::lround(best));
  }
  return mapping;
}

namespace {

std::map<std::uint32_t, double> estimate_for_lengths(
    const ModelParams& params, const std::set<std::uint32_t>& lengths,
    const ZEstimatorConfig& config,
    std::optional<std::size_t> clamp_sentiment) {
  std::map<std::uint32_t, double> out;
  for (const std::uint32_t d : lengths) {
    if (config.use_ais) {
      Rng rng(config.seed, "z-ais", d);
      out[d] = ais_log_z(params, d, config.ais_runs, config.ais_temperatures,
                         rng, config.threads, clamp_sentiment)
                   .log_z;
    } else {
      out[d] = exact_log_z(params, d, clamp_sentiment).log_z;
    }
  }
  return out;
}

}  // namespace

std::map<std::uint32_t, double> log_z_for_docs(const ModelParams& params,
                                               std::span<const Document> docs,
                                               const ZEstimatorConfig& config) {
  const auto mapping = bucket_lengths(docs, config.max_buckets);
  std::set<std::uint32_t> reps;
  for (const auto& [d, rep] : mapping) {
    reps.insert(rep);
  }
  const auto rep_z = estimate_for_lengths(params, reps, config, std::nullopt);
  std::map<std::uint32_t, double> out;
  for (const auto& [d, rep] : mapping) {
    out[d] = rep_z.at(rep);
  }
  return out;
}

std::map<std::uint32_t, std::vector<double>> log_z_for_docs_by_label(
    const ModelParams& params, std::span<const Document> docs,
    const ZEstimatorConfig& config) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "log_z_for_docs_by_label requires joint-mode parameters");
  }
  const auto mapping = bucket_lengths(docs, config.max_buckets);
  std::set<std::uint32_t> reps;
  for (const auto& [d, rep] : mapping) {
    reps.insert(rep);
  }
  std::map<std::uint32_t, std::vector<double>> rep_z;
  for (const std::uint32_t d : reps) {
    std::vector<double> per_label(params.sentiment_size());
    for (std::size_t s = 0; s < params.sentiment_size(); ++s) {
      if (config.use_ais) {
        Rng rng(config.seed, "z-ais-label", d * 131 + s);
        per_label[s] = ais_log_z(params, d, config.ais_runs,
                                 config.ais_temperatures, rng, config.threads,
                                 s)
                           .log_z;
      } else {
        per_label[s] = exact_log_z(params, d, s).log_z;
      }
    }
    rep_z[d] = std::move(per_label);
  }
  std::map<std::uint32_t, std::vector<double>> out;
  for (const auto& [d, rep] : mapping) {
    out[d] = rep_z.at(rep);
  }
  return out;
}

}  // namespace sentopic
