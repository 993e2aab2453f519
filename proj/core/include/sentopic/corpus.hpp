#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sentopic/document.hpp"
#include "sentopic/lexicon.hpp"
#include "sentopic/vocabulary.hpp"

namespace sentopic {

enum class Split : std::uint8_t { train, test };

// A vocabulary, the documents vectorized against it, and a train/test
// partition. Immutable after construction; safe to share across threads
// read-only.
struct Corpus {
  Vocabulary vocabulary;
  std::vector<Document> documents;
  std::vector<Split> split;  // one entry per document

  std::vector<std::size_t> train_indices() const;
  std::vector<std::size_t> test_indices() const;
  std::vector<const Document*> docs_in(Split which) const;

  // Directory layout: vocabulary.txt, documents.tsv, split.txt.
  // documents.tsv holds one document per line:
  //   label<TAB>topic<TAB>idx:count idx:count ...
  // with 0-based ascending indices and `-` for an absent label/topic.
  // split.txt holds `train` or `test`, one line per document.
  static Corpus load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;
};

// Counts occurrences of vocabulary words; out-of-vocabulary tokens are
// dropped. A document whose tokens are all out of vocabulary comes back
// empty (length 0); callers decide whether to skip it.
Document vectorize(std::span<const std::string> tokens,
                   const Vocabulary& vocab);

// Inverse of vectorize up to token order: each vocabulary word repeated
// count times, in index order.
std::vector<std::string> detokenize(const Document& doc,
                                    const Vocabulary& vocab);

// Labels each document by comparing its count-weighted positive vs negative
// lexicon mass: positive majority -> 1, negative majority -> 0, exact ties
// excluded from the output. Topic labels and split assignments are kept.
Corpus derive_sentiment_tags(const Corpus& corpus,
                             const SentimentLexicon& lexicon);

// Merges the movie corpus with the four product-review corpora into one
// topic-labeled corpus (topics 0..4: movie, book, dvd, electronics,
// kitchen). Every part must carry exactly 1000 positive and 1000 negative
// documents over the shared vocabulary. The split is stratified per
// (topic, sentiment): 750 train + 250 test each, drawn under the seed.
Corpus build_mrmds(const Corpus& movie, std::span<const Corpus> domain_parts,
                   std::uint64_t seed);

// Synthetic corpus from a known mixture whose word distributions correlate
// with both topic and sentiment labels. Word weights are uniform except on
// per-topic and per-sentiment index blocks, which are boosted by (1 + skew);
// skew 0 makes every class distribution identical.
struct SynthSpec {
  std::size_t vocab_size = 50;     // K
  std::size_t num_sentiments = 2;  // S
  std::size_t num_topics = 2;
  std::size_t docs_per_topic = 100;  // sentiments alternate within a topic
  std::uint32_t min_length = 20;
  std::uint32_t max_length = 40;
  double skew = 1.0;
  double train_fraction = 0.75;  // stratified per (topic, sentiment) class
};

Corpus synth_corpus(const SynthSpec& spec, std::uint64_t seed);

// The class word distribution the generator samples from; exposed for tests
// and for building matched synthetic lexicons.
std::vector<double> synth_class_distribution(const SynthSpec& spec,
                                             std::size_t topic,
                                             std::size_t sentiment);

// Vocabulary index ranges boosted for a given sentiment / topic.
std::pair<std::size_t, std::size_t> synth_sentiment_block(
    const SynthSpec& spec, std::size_t sentiment);
std::pair<std::size_t, std::size_t> synth_topic_block(const SynthSpec& spec,
                                                      std::size_t topic);

}  // namespace sentopic
