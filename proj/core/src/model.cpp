#include "sentopic/model.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "sentopic/errors.hpp"
#include "sentopic/numerics.hpp"

namespace sentopic {

ModelParams ModelParams::zeros(std::size_t vocab_size,
                               std::size_t hidden_size,
                               std::size_t sentiment_size) {
  ModelParams params;
  params.visible_hidden = Matrix(vocab_size, hidden_size);
  params.visible_bias.assign(vocab_size, 0.0);
  params.hidden_bias.assign(hidden_size, 0.0);
  if (sentiment_size > 0) {
    params.sentiment_hidden = Matrix(sentiment_size, hidden_size);
    params.sentiment_bias.assign(sentiment_size, 0.0);
  }
  return params;
}

void ModelParams::check_finite() const {
  if (!all_finite(visible_hidden.flat()) ||
      !all_finite(sentiment_hidden.flat()) || !all_finite(visible_bias) ||
      !all_finite(hidden_bias) || !all_finite(sentiment_bias)) {
    throw NumericError("model parameters contain NaN or infinite entries");
  }
}

namespace {

void check_hidden_dim(const ModelParams& params,
                      std::span<const double> hidden) {
  if (hidden.size() != params.hidden_size()) {
    throw std::invalid_argument("hidden vector has size " +
                                std::to_string(hidden.size()) + ", expected " +
                                std::to_string(params.hidden_size()));
  }
}

void check_doc_dim(const ModelParams& params, const Document& doc) {
  if (!doc.entries.empty() &&
      doc.entries.back().first >= params.vocab_size()) {
    throw std::invalid_argument("document references word index " +
                                std::to_string(doc.entries.back().first) +
                                " beyond vocabulary size " +
                                std::to_string(params.vocab_size()));
  }
}

void check_sentiment(const ModelParams& params, std::size_t sentiment) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "baseline-mode parameters have no sentiment layer; use the "
        "sentiment-free overload (hidden_given_v / free_energy(params, doc))");
  }
  if (sentiment >= params.sentiment_size()) {
    throw std::invalid_argument("sentiment index " +
                                std::to_string(sentiment) +
                                " out of range (S=" +
                                std::to_string(params.sentiment_size()) + ")");
  }
}

}  // namespace

std::vector<double> hidden_inputs(const ModelParams& params,
                                  const Document& doc,
                                  std::optional<std::size_t> sentiment) {
  check_doc_dim(params, doc);
  const std::size_t hidden_size = params.hidden_size();
  std::vector<double> inputs(hidden_size);
  const double length = static_cast<double>(doc.length);
  for (std::size_t j = 0; j < hidden_size; ++j) {
    inputs[j] = length * params.hidden_bias[j];
  }
  for (const auto& [word, count] : doc.entries) {
    const auto row = params.visible_hidden.row(word);
    const double c = static_cast<double>(count);
    for (std::size_t j = 0; j < hidden_size; ++j) {
      inputs[j] += c * row[j];
    }
  }
  if (sentiment) {
    check_sentiment(params, *sentiment);
    const auto row = params.sentiment_hidden.row(*sentiment);
    for (std::size_t j = 0; j < hidden_size; ++j) {
      inputs[j] += row[j];
    }
  }
  return inputs;
}

namespace {

double energy_impl(const ModelParams& params, const Document& doc,
                   std::optional<std::size_t> sentiment,
                   std::span<const double> hidden) {
  check_hidden_dim(params, hidden);
  const std::vector<double> inputs = hidden_inputs(params, doc, sentiment);
  double interaction = 0.0;
  for (std::size_t j = 0; j < hidden.size(); ++j) {
    interaction += hidden[j] * inputs[j];
  }
  double bias = 0.0;
  for (const auto& [word, count] : doc.entries) {
    bias += static_cast<double>(count) * params.visible_bias[word];
  }
  if (sentiment) {
    bias += params.sentiment_bias[*sentiment];
  }
  return -(interaction + bias);
}

}  // namespace

double energy(const ModelParams& params, const Document& doc,
              std::size_t sentiment, std::span<const double> hidden) {
  check_sentiment(params, sentiment);
  return energy_impl(params, doc, sentiment, hidden);
}

double energy(const ModelParams& params, const Document& doc,
              std::span<const double> hidden) {
  if (params.joint()) {
    throw std::invalid_argument(
        "joint-mode parameters require a sentiment index for the energy");
  }
  return energy_impl(params, doc, std::nullopt, hidden);
}

std::vector<double> hidden_given_vs(const ModelParams& params,
                                    const Document& doc,
                                    std::size_t sentiment) {
  check_sentiment(params, sentiment);
  std::vector<double> probs = hidden_inputs(params, doc, sentiment);
  for (double& p : probs) {
    p = sigmoid(p);
  }
  return probs;
}

std::vector<double> hidden_given_v(const ModelParams& params,
                                   const Document& doc) {
  std::vector<double> probs = hidden_inputs(params, doc, std::nullopt);
  for (double& p : probs) {
    p = sigmoid(p);
  }
  return probs;
}

std::vector<double> visible_softmax(const ModelParams& params,
                                    std::span<const double> hidden) {
  check_hidden_dim(params, hidden);
  const std::size_t vocab_size = params.vocab_size();
  std::vector<double> logits(vocab_size);
  for (std::size_t k = 0; k < vocab_size; ++k) {
    double z = params.visible_bias[k];
    const auto row = params.visible_hidden.row(k);
    for (std::size_t j = 0; j < hidden.size(); ++j) {
      z += row[j] * hidden[j];
    }
    logits[k] = z;
  }
  softmax_inplace(logits);
  return logits;
}

std::vector<double> sentiment_softmax(const ModelParams& params,
                                      std::span<const double> hidden) {
  if (!params.joint()) {
    throw std::invalid_argument(
        "baseline-mode parameters have no sentiment softmax");
  }
  check_hidden_dim(params, hidden);
  const std::size_t sentiment_size = params.sentiment_size();
  std::vector<double> logits(sentiment_size);
  for (std::size_t l = 0; l < sentiment_size; ++l) {
    double z = params.sentiment_bias[l];
    const auto row = params.sentiment_hidden.row(l);
    for (std::size_t j = 0; j < hidden.size(); ++j) {
      z += row[j] * hidden[j];
    }
    logits[l] = z;
  }
  softmax_inplace(logits);
  return logits;
}

Document sample_document(const ModelParams& params,
                         std::span<const double> hidden, std::uint32_t length,
                         Rng& rng) {
  if (length == 0) {
    throw std::invalid_argument("sample_document: length must be >= 1");
  }
  const std::vector<double> probs = visible_softmax(params, hidden);
  const auto counts = rng.multinomial(length, probs);
  return make_document(counts);
}

std::size_t sample_sentiment(std::span<const double> probs, Rng& rng) {
  return rng.categorical(probs);
}

std::vector<double> sample_hidden(std::span<const double> probs, Rng& rng) {
  std::vector<double> sample(probs.size());
  for (std::size_t j = 0; j < probs.size(); ++j) {
    sample[j] = rng.bernoulli(probs[j]) ? 1.0 : 0.0;
  }
  return sample;
}

namespace {

double free_energy_impl(const ModelParams& params, const Document& doc,
                        std::optional<std::size_t> sentiment) {
  const std::vector<double> inputs = hidden_inputs(params, doc, sentiment);
  double value = 0.0;
  for (const auto& [word, count] : doc.entries) {
    value += static_cast<double>(count) * params.visible_bias[word];
  }
  if (sentiment) {
    value += params.sentiment_bias[*sentiment];
  }
  for (const double x : inputs) {
    value += softplus(x);
  }
  return value;
}

}  // namespace

double free_energy(const ModelParams& params, const Document& doc,
                   std::size_t sentiment) {
  check_sentiment(params, sentiment);
  return free_energy_impl(params, doc, sentiment);
}

double free_energy(const ModelParams& params, const Document& doc) {
  if (params.joint()) {
    throw std::invalid_argument(
        "joint-mode parameters require a sentiment index or "
        "free_energy_marginal");
  }
  return free_energy_impl(params, doc, std::nullopt);
}

double free_energy_marginal(const ModelParams& params, const Document& doc) {
  if (!params.joint()) {
    return free_energy_impl(params, doc, std::nullopt);
  }
  std::vector<double> terms(params.sentiment_size());
  for (std::size_t s = 0; s < params.sentiment_size(); ++s) {
    terms[s] = free_energy_impl(params, doc, s);
  }
  return log_sum_exp(terms);
}

namespace {

constexpr char kMagic[8] = {'S', 'N', 'T', 'O', 'P', 'I', 'C', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_doubles(std::ostream& out, std::span<const double> xs) {
  out.write(reinterpret_cast<const char*>(xs.data()),
            static_cast<std::streamsize>(xs.size() * sizeof(double)));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

void read_doubles(std::istream& in, std::span<double> xs) {
  in.read(reinterpret_cast<char*>(xs.data()),
          static_cast<std::streamsize>(xs.size() * sizeof(double)));
}

}  // namespace

void save_model(const ModelParams& params,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write model file: " + path.string());
  }
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kFormatVersion);
  write_u32(out, params.joint() ? 1 : 0);
  write_u64(out, params.vocab_size());
  write_u64(out, params.hidden_size());
  write_u64(out, params.sentiment_size());
  write_doubles(out, params.visible_hidden.flat());
  write_doubles(out, params.visible_bias);
  write_doubles(out, params.hidden_bias);
  if (params.joint()) {
    write_doubles(out, params.sentiment_hidden.flat());
    write_doubles(out, params.sentiment_bias);
  }
  if (!out) {
    throw DataError("failed while writing model file: " + path.string());
  }
}

ModelParams load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open model file: " + path.string());
  }
  char magic[8] = {};
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a model file (bad magic): " + path.string());
  }
  const std::uint32_t version = read_u32(in);
  if (version != kFormatVersion) {
    throw DataError("unsupported model format version " +
                    std::to_string(version) + " in " + path.string());
  }
  const std::uint32_t mode = read_u32(in);
  const std::uint64_t vocab_size = read_u64(in);
  const std::uint64_t hidden_size = read_u64(in);
  const std::uint64_t sentiment_size = read_u64(in);
  if ((mode == 0) != (sentiment_size == 0)) {
    throw DataError("model mode flag inconsistent with sentiment size in " +
                    path.string());
  }
  ModelParams params = ModelParams::zeros(vocab_size, hidden_size,
                                          sentiment_size);
  read_doubles(in, params.visible_hidden.flat());
  read_doubles(in, params.visible_bias);
  read_doubles(in, params.hidden_bias);
  if (sentiment_size > 0) {
    read_doubles(in, params.sentiment_hidden.flat());
    read_doubles(in, params.sentiment_bias);
  }
  if (!in) {
    throw DataError("model file truncated: " + path.string());
  }
  return params;
}

}  // namespace sentopic
