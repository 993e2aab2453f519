#include "sentopic/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sentopic/errors.hpp"
#include "sentopic/rng.hpp"

namespace sentopic {

std::vector<std::size_t> Corpus::train_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (split[i] == Split::train) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> Corpus::test_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (split[i] == Split::test) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<const Document*> Corpus::docs_in(Split which) const {
  std::vector<const Document*> out;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (split[i] == which) {
      out.push_back(&documents[i]);
    }
  }
  return out;
}

namespace {

std::string label_field(const std::optional<std::uint32_t>& value) {
  return value ? std::to_string(*value) : "-";
}

std::optional<std::uint32_t> parse_label_field(const std::string& field,
                                               const std::string& file,
                                               std::size_t line_no) {
  if (field == "-") {
    return std::nullopt;
  }
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(field, &pos);
    if (pos != field.size()) {
      throw std::invalid_argument(field);
    }
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw DataError(file + " line " + std::to_string(line_no) +
                    ": bad label field '" + field + "'");
  }
}

}  // namespace

Corpus Corpus::load(const std::filesystem::path& dir) {
  Corpus corpus;
  corpus.vocabulary = Vocabulary::load(dir / "vocabulary.txt");

  const auto doc_path = dir / "documents.tsv";
  std::ifstream docs(doc_path);
  if (!docs) {
    throw DataError("cannot open document file: " + doc_path.string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(docs, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream ss(line);
    std::string label_str, topic_str, counts_str;
    if (!std::getline(ss, label_str, '\t') ||
        !std::getline(ss, topic_str, '\t')) {
      throw DataError(doc_path.string() + " line " + std::to_string(line_no) +
                      ": expected label<TAB>topic<TAB>counts");
    }
    std::getline(ss, counts_str);  // may be empty

    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    std::istringstream counts(counts_str);
    std::string pair_str;
    std::uint32_t prev_index = 0;
    bool first = true;
    while (counts >> pair_str) {
      const auto colon = pair_str.find(':');
      if (colon == std::string::npos) {
        throw DataError(doc_path.string() + " line " +
                        std::to_string(line_no) + ": bad idx:count token '" +
                        pair_str + "'");
      }
      unsigned long idx = 0, count = 0;
      try {
        idx = std::stoul(pair_str.substr(0, colon));
        count = std::stoul(pair_str.substr(colon + 1));
      } catch (const std::exception&) {
        throw DataError(doc_path.string() + " line " +
                        std::to_string(line_no) + ": bad idx:count token '" +
                        pair_str + "'");
      }
      if (idx >= corpus.vocabulary.size()) {
        throw DataError(doc_path.string() + " line " +
                        std::to_string(line_no) + ": word index " +
                        std::to_string(idx) + " out of range (K=" +
                        std::to_string(corpus.vocabulary.size()) + ")");
      }
      if (count == 0) {
        continue;
      }
      if (!first && idx <= prev_index) {
        throw DataError(doc_path.string() + " line " +
                        std::to_string(line_no) +
                        ": indices must be strictly ascending");
      }
      entries.emplace_back(static_cast<std::uint32_t>(idx),
                           static_cast<std::uint32_t>(count));
      prev_index = static_cast<std::uint32_t>(idx);
      first = false;
    }

    Document doc;
    doc.entries = std::move(entries);
    for (const auto& [idx, count] : doc.entries) {
      doc.length += count;
    }
    doc.sentiment = parse_label_field(label_str, doc_path.string(), line_no);
    doc.topic = parse_label_field(topic_str, doc_path.string(), line_no);
    corpus.documents.push_back(std::move(doc));
  }

  const auto split_path = dir / "split.txt";
  std::ifstream split(split_path);
  if (!split) {
    throw DataError("cannot open split file: " + split_path.string());
  }
  line_no = 0;
  while (std::getline(split, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line == "train") {
      corpus.split.push_back(Split::train);
    } else if (line == "test") {
      corpus.split.push_back(Split::test);
    } else {
      throw DataError(split_path.string() + " line " +
                      std::to_string(line_no) +
                      ": expected 'train' or 'test', got '" + line + "'");
    }
  }
  if (corpus.split.size() != corpus.documents.size()) {
    throw DataError("split file has " + std::to_string(corpus.split.size()) +
                    " entries for " + std::to_string(corpus.documents.size()) +
                    " documents");
  }
  return corpus;
}

void Corpus::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  vocabulary.save(dir / "vocabulary.txt");

  std::ofstream docs(dir / "documents.tsv");
  if (!docs) {
    throw DataError("cannot write document file in " + dir.string());
  }
  for (const auto& doc : documents) {
    docs << label_field(doc.sentiment) << '\t' << label_field(doc.topic)
         << '\t';
    for (std::size_t i = 0; i < doc.entries.size(); ++i) {
      if (i > 0) {
        docs << ' ';
      }
      docs << doc.entries[i].first << ':' << doc.entries[i].second;
    }
    docs << '\n';
  }

  std::ofstream split_out(dir / "split.txt");
  if (!split_out) {
    throw DataError("cannot write split file in " + dir.string());
  }
  for (const Split s : split) {
    split_out << (s == Split::train ? "train" : "test") << '\n';
  }
}

Document vectorize(std::span<const std::string> tokens,
                   const Vocabulary& vocab) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
  for (const auto& token : tokens) {
    if (const auto idx = vocab.index_of(token)) {
      entries.emplace_back(static_cast<std::uint32_t>(*idx), 1);
    }
  }
  return make_document_sparse(std::move(entries));
}

std::vector<std::string> detokenize(const Document& doc,
                                    const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(doc.length);
  for (const auto& [idx, count] : doc.entries) {
    for (std::uint32_t i = 0; i < count; ++i) {
      tokens.push_back(vocab.word(idx));
    }
  }
  return tokens;
}

Corpus derive_sentiment_tags(const Corpus& corpus,
                             const SentimentLexicon& lexicon) {
  const LexiconOverlap overlap =
      lexicon_intersection(corpus.vocabulary, lexicon);
  Corpus out;
  out.vocabulary = corpus.vocabulary;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const Document& doc = corpus.documents[i];
    std::uint64_t positive = 0, negative = 0;
    for (const std::size_t idx : overlap.positive) {
      positive += doc.count_at(static_cast<std::uint32_t>(idx));
    }
    for (const std::size_t idx : overlap.negative) {
      negative += doc.count_at(static_cast<std::uint32_t>(idx));
    }
    if (positive == negative) {
      continue;  // tie: no defensible label, drop from the tagged set
    }
    Document tagged = doc;
    tagged.sentiment = positive > negative ? 1 : 0;
    out.documents.push_back(std::move(tagged));
    out.split.push_back(corpus.split[i]);
  }
  return out;
}

Corpus build_mrmds(const Corpus& movie, std::span<const Corpus> domain_parts,
                   std::uint64_t seed) {
  if (domain_parts.size() != 4) {
    throw DataError("build_mrmds: expected 4 domain corpora, got " +
                    std::to_string(domain_parts.size()));
  }
  std::vector<const Corpus*> parts{&movie};
  for (const Corpus& part : domain_parts) {
    parts.push_back(&part);
  }
  for (std::size_t t = 1; t < parts.size(); ++t) {
    if (!(parts[t]->vocabulary == parts[0]->vocabulary)) {
      throw DataError("build_mrmds: part " + std::to_string(t) +
                      " uses a different vocabulary");
    }
  }

  constexpr std::size_t kPerStratum = 1000;
  constexpr std::size_t kTrainPerStratum = 750;

  Corpus out;
  out.vocabulary = parts[0]->vocabulary;
  for (std::size_t topic = 0; topic < parts.size(); ++topic) {
    const Corpus& part = *parts[topic];
    std::array<std::vector<std::size_t>, 2> by_label;
    for (std::size_t i = 0; i < part.documents.size(); ++i) {
      const auto& doc = part.documents[i];
      if (!doc.sentiment || *doc.sentiment > 1) {
        throw DataError("build_mrmds: part " + std::to_string(topic) +
                        " document " + std::to_string(i) +
                        " lacks a binary sentiment label");
      }
      by_label[*doc.sentiment].push_back(i);
    }
    for (std::size_t label = 0; label < 2; ++label) {
      if (by_label[label].size() != kPerStratum) {
        throw DataError(
            "build_mrmds: part " + std::to_string(topic) + " has " +
            std::to_string(by_label[label].size()) +
            (label == 1 ? " positive" : " negative") + " documents, needs " +
            std::to_string(kPerStratum));
      }
    }

    // Shuffled ranks decide the split; source document order is kept.
    std::vector<bool> doc_is_train(part.documents.size(), false);
    for (std::size_t label = 0; label < 2; ++label) {
      auto& indices = by_label[label];
      Rng rng(seed, "mrmds-split", topic * 2 + label);
      rng.shuffle(indices);
      for (std::size_t r = 0; r < kTrainPerStratum; ++r) {
        doc_is_train[indices[r]] = true;
      }
    }
    for (std::size_t i = 0; i < part.documents.size(); ++i) {
      Document doc = part.documents[i];
      doc.topic = static_cast<std::uint32_t>(topic);
      out.documents.push_back(std::move(doc));
      out.split.push_back(doc_is_train[i] ? Split::train : Split::test);
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> synth_topic_block(const SynthSpec& spec,
                                                      std::size_t topic) {
  const std::size_t half = spec.vocab_size / 2;
  const std::size_t begin = topic * half / spec.num_topics;
  const std::size_t end = (topic + 1) * half / spec.num_topics;
  return {begin, end};
}

std::pair<std::size_t, std::size_t> synth_sentiment_block(
    const SynthSpec& spec, std::size_t sentiment) {
  const std::size_t half = spec.vocab_size / 2;
  const std::size_t width = spec.vocab_size - half;
  const std::size_t begin = half + sentiment * width / spec.num_sentiments;
  const std::size_t end =
      half + (sentiment + 1) * width / spec.num_sentiments;
  return {begin, end};
}

std::vector<double> synth_class_distribution(const SynthSpec& spec,
                                             std::size_t topic,
                                             std::size_t sentiment) {
  std::vector<double> weights(spec.vocab_size, 1.0);
  const auto [tb, te] = synth_topic_block(spec, topic);
  for (std::size_t k = tb; k < te; ++k) {
    weights[k] *= 1.0 + spec.skew;
  }
  const auto [sb, se] = synth_sentiment_block(spec, sentiment);
  for (std::size_t k = sb; k < se; ++k) {
    weights[k] *= 1.0 + spec.skew;
  }
  double total = 0.0;
  for (const double w : weights) {
    total += w;
  }
  for (double& w : weights) {
    w /= total;
  }
  return weights;
}

Corpus synth_corpus(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.vocab_size < spec.num_topics) {
    throw DataError("synth_corpus: vocabulary smaller than topic count");
  }
  if (spec.num_sentiments == 0 || spec.num_topics == 0 ||
      spec.docs_per_topic == 0) {
    throw DataError("synth_corpus: counts must be positive");
  }
  if (spec.min_length == 0 || spec.min_length > spec.max_length) {
    throw DataError("synth_corpus: bad document length range");
  }
  if (spec.skew < 0.0) {
    throw DataError("synth_corpus: skew must be non-negative");
  }
  if (!(spec.train_fraction >= 0.0 && spec.train_fraction <= 1.0)) {
    throw DataError("synth_corpus: train_fraction must be in [0,1]");
  }

  std::vector<std::string> words;
  words.reserve(spec.vocab_size);
  for (std::size_t k = 0; k < spec.vocab_size; ++k) {
    words.push_back("w" + std::to_string(k));
  }

  Corpus corpus;
  corpus.vocabulary = Vocabulary(std::move(words));
  Rng rng(seed, "synth");

  for (std::size_t topic = 0; topic < spec.num_topics; ++topic) {
    std::vector<std::vector<double>> class_probs;
    for (std::size_t s = 0; s < spec.num_sentiments; ++s) {
      class_probs.push_back(synth_class_distribution(spec, topic, s));
    }
    // Per (topic, sentiment) class: round-robin sentiments, first
    // train_fraction of each class assigned to train.
    std::vector<std::size_t> class_sizes(spec.num_sentiments, 0);
    for (std::size_t d = 0; d < spec.docs_per_topic; ++d) {
      ++class_sizes[d % spec.num_sentiments];
    }
    std::vector<std::size_t> train_quota(spec.num_sentiments);
    for (std::size_t s = 0; s < spec.num_sentiments; ++s) {
      train_quota[s] = static_cast<std::size_t>(
          std::lround(spec.train_fraction *
                      static_cast<double>(class_sizes[s])));
    }
    std::vector<std::size_t> emitted(spec.num_sentiments, 0);
    for (std::size_t d = 0; d < spec.docs_per_topic; ++d) {
      const std::size_t sentiment = d % spec.num_sentiments;
      const std::uint32_t length =
          spec.min_length +
          static_cast<std::uint32_t>(rng.uniform_index(
              spec.max_length - spec.min_length + 1));
      const auto counts = rng.multinomial(length, class_probs[sentiment]);
      Document doc = make_document(counts);
      doc.sentiment = static_cast<std::uint32_t>(sentiment);
      doc.topic = static_cast<std::uint32_t>(topic);
      corpus.documents.push_back(std::move(doc));
      corpus.split.push_back(emitted[sentiment] < train_quota[sentiment]
                                 ? Split::train
                                 : Split::test);
      ++emitted[sentiment];
    }
  }
  return corpus;
}

}  // namespace sentopic
