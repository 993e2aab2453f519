#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include "common.hpp"
#include "sentopic/errors.hpp"
#include "sentopic/preprocess.hpp"
#include "sentopic/rng.hpp"

namespace sentopic::cli {
namespace {

struct SynthOpts {
  std::string out;
  std::string config;
  std::size_t vocab = 50;
  std::size_t sentiments = 2;
  std::size_t topics = 2;
  std::size_t docs = 200;  // total, split evenly across topics
  std::uint32_t min_len = 20;
  std::uint32_t max_len = 40;
  double skew = 1.0;
  double train_fraction = 0.75;
  std::uint64_t seed = 0;
};

void run_synth(const SynthOpts& opts, ResolvedConfig& resolved) {
  if (opts.docs % opts.topics != 0) {
    throw CLI::ValidationError(
        "docs", "total document count must divide evenly across topics");
  }
  SynthSpec spec;
  spec.vocab_size = opts.vocab;
  spec.num_sentiments = opts.sentiments;
  spec.num_topics = opts.topics;
  spec.docs_per_topic = opts.docs / opts.topics;
  spec.min_length = opts.min_len;
  spec.max_length = opts.max_len;
  spec.skew = opts.skew;
  spec.train_fraction = opts.train_fraction;
  const Corpus corpus = synth_corpus(spec, opts.seed);
  corpus.save(opts.out);
  print_resolved(resolved);
  std::cout << "wrote " << corpus.documents.size() << " documents to "
            << opts.out << '\n';
}

struct CorpusOpts {
  std::string input;
  std::string out;
  std::string config;
  std::string vocab_file;
  std::string stopword_file;
  std::string stemmer = "porter";
  std::string label_by = "topic";  // or "sentiment"
  std::size_t max_vocab = 2000;
  double train_fraction = 0.5;
  std::uint64_t seed = 0;
};

// Raw layout: one subdirectory per class, text files inside. Subdirectories
// sort lexicographically to fix class indices; with --label-by sentiment the
// order must put the negative class first (e.g. neg/, pos/).
void run_corpus(const CorpusOpts& opts, ResolvedConfig& resolved) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(opts.input)) {
    throw DataError("input is not a directory: " + opts.input);
  }
  PreprocessConfig preprocess_config;
  preprocess_config.stop_words = opts.stopword_file.empty()
                                     ? default_stop_words()
                                     : load_stop_words(opts.stopword_file);
  if (opts.stemmer == "porter") {
    preprocess_config.stemmer = StemmerKind::porter;
  } else if (opts.stemmer == "none") {
    preprocess_config.stemmer = StemmerKind::none;
  } else {
    throw CLI::ValidationError("stemmer", "expected 'porter' or 'none'");
  }

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(opts.input)) {
    if (entry.is_directory()) {
      class_dirs.push_back(entry.path());
    }
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.empty()) {
    throw DataError("no class subdirectories under " + opts.input);
  }

  std::vector<std::vector<std::string>> token_lists;
  std::vector<std::uint32_t> class_of;
  for (std::size_t c = 0; c < class_dirs.size(); ++c) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(class_dirs[c])) {
      if (entry.is_regular_file()) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) {
        throw DataError("cannot read " + file.string());
      }
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      token_lists.push_back(preprocess(text, preprocess_config));
      class_of.push_back(static_cast<std::uint32_t>(c));
    }
  }
  if (token_lists.empty()) {
    throw DataError("no documents under " + opts.input);
  }

  const Vocabulary vocab = opts.vocab_file.empty()
                               ? build_vocabulary(token_lists, opts.max_vocab)
                               : Vocabulary::load(opts.vocab_file);

  Corpus corpus;
  corpus.vocabulary = vocab;
  std::vector<std::uint32_t> kept_class;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < token_lists.size(); ++i) {
    Document doc = vectorize(token_lists[i], vocab);
    if (doc.empty()) {
      ++skipped;
      continue;
    }
    if (opts.label_by == "sentiment") {
      doc.sentiment = class_of[i];
    } else {
      doc.topic = class_of[i];
    }
    corpus.documents.push_back(std::move(doc));
    kept_class.push_back(class_of[i]);
  }
  if (skipped > 0) {
    std::cerr << "prepare corpus: skipped " << skipped
              << " document(s) with no in-vocabulary tokens\n";
  }

  // stratified split per class under the seeded stream
  corpus.split.assign(corpus.documents.size(), Split::test);
  for (std::uint32_t c = 0; c < class_dirs.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < kept_class.size(); ++i) {
      if (kept_class[i] == c) {
        members.push_back(i);
      }
    }
    Rng rng(opts.seed, "split", c);
    rng.shuffle(members);
    const auto quota = static_cast<std::size_t>(
        std::lround(opts.train_fraction * static_cast<double>(members.size())));
    for (std::size_t r = 0; r < quota && r < members.size(); ++r) {
      corpus.split[members[r]] = Split::train;
    }
  }

  corpus.save(opts.out);
  print_resolved(resolved);
  std::cout << "wrote " << corpus.documents.size() << " documents (K="
            << vocab.size() << ") to " << opts.out << '\n';
}

struct TagOpts {
  std::string data;
  std::string lexicon;
  std::string out;
  std::string config;
};

void run_tag(const TagOpts& opts, ResolvedConfig& resolved) {
  const Corpus corpus = Corpus::load(opts.data);
  const SentimentLexicon lexicon = SentimentLexicon::load(opts.lexicon);
  const Corpus tagged = derive_sentiment_tags(corpus, lexicon);
  tagged.save(opts.out);
  print_resolved(resolved);
  std::cout << "tagged " << tagged.documents.size() << " of "
            << corpus.documents.size() << " documents (ties dropped) into "
            << opts.out << '\n';
}

struct MergeOpts {
  std::string movie, books, dvd, electronics, kitchen;
  std::string out;
  std::string config;
  std::uint64_t seed = 0;
};

void run_merge(const MergeOpts& opts, ResolvedConfig& resolved) {
  const Corpus movie = Corpus::load(opts.movie);
  std::vector<Corpus> parts;
  for (const std::string& dir :
       {opts.books, opts.dvd, opts.electronics, opts.kitchen}) {
    parts.push_back(Corpus::load(dir));
  }
  const Corpus merged = build_mrmds(movie, parts, opts.seed);
  merged.save(opts.out);
  print_resolved(resolved);
  std::cout << "merged corpus: " << merged.documents.size()
            << " documents, 5 topics, written to " << opts.out << '\n';
}

}  // namespace

void register_prepare(CLI::App& app) {
  auto* prepare = app.add_subcommand(
      "prepare", "Build datasets: synthetic corpora, raw-text ingestion, "
                 "lexicon tagging, five-domain merge");
  prepare->require_subcommand(1);

  {
    auto opts = std::make_shared<SynthOpts>();
    auto* cmd = prepare->add_subcommand("synth",
                                        "Generate a seeded synthetic corpus");
    cmd->add_option("--out", opts->out, "output corpus directory")->required();
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--k", opts->vocab, "vocabulary size");
    cmd->add_option("--sentiments", opts->sentiments, "sentiment classes");
    cmd->add_option("--topics", opts->topics, "topic count");
    cmd->add_option("--docs", opts->docs, "total documents");
    cmd->add_option("--min-len", opts->min_len, "minimum document length");
    cmd->add_option("--max-len", opts->max_len, "maximum document length");
    cmd->add_option("--skew", opts->skew, "class word-distribution skew");
    cmd->add_option("--train-fraction", opts->train_fraction,
                    "train share per class");
    cmd->add_option("--seed", opts->seed, "PRNG seed");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("k", opts->vocab);
      resolved.merge("sentiments", opts->sentiments);
      resolved.merge("topics", opts->topics);
      resolved.merge("docs", opts->docs);
      resolved.merge("min-len", opts->min_len);
      resolved.merge("max-len", opts->max_len);
      resolved.merge("skew", opts->skew);
      resolved.merge("train-fraction", opts->train_fraction);
      resolved.merge_seed("seed", opts->seed);
      resolved.record("out", opts->out);
      run_synth(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<CorpusOpts>();
    auto* cmd = prepare->add_subcommand(
        "corpus", "Tokenize a raw text tree and emit corpus files");
    cmd->add_option("--input", opts->input, "raw corpus directory")
        ->required();
    cmd->add_option("--out", opts->out, "output corpus directory")->required();
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--max-vocab", opts->max_vocab,
                    "most frequent words to keep");
    cmd->add_option("--vocab", opts->vocab_file,
                    "use an existing vocabulary file instead of building one");
    cmd->add_option("--stopwords", opts->stopword_file,
                    "stop word file (default: built-in English list)");
    cmd->add_option("--stemmer", opts->stemmer, "porter|none");
    cmd->add_option("--label-by", opts->label_by,
                    "treat subdirectories as topic|sentiment classes");
    cmd->add_option("--train-fraction", opts->train_fraction,
                    "train share per class");
    cmd->add_option("--seed", opts->seed, "PRNG seed");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge("max-vocab", opts->max_vocab);
      resolved.merge("vocab", opts->vocab_file);
      resolved.merge("stopwords", opts->stopword_file);
      resolved.merge("stemmer", opts->stemmer);
      resolved.merge("label-by", opts->label_by);
      resolved.merge("train-fraction", opts->train_fraction);
      resolved.merge_seed("seed", opts->seed);
      resolved.record("input", opts->input);
      resolved.record("out", opts->out);
      run_corpus(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<TagOpts>();
    auto* cmd = prepare->add_subcommand(
        "tag", "Derive sentiment labels from a lexicon (ties are dropped)");
    cmd->add_option("--data", opts->data, "input corpus directory")
        ->required();
    cmd->add_option("--lexicon", opts->lexicon, "sentiment lexicon file")
        ->required();
    cmd->add_option("--out", opts->out, "output corpus directory")->required();
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.record("data", opts->data);
      resolved.record("lexicon", opts->lexicon);
      resolved.record("out", opts->out);
      run_tag(*opts, resolved);
    });
  }

  {
    auto opts = std::make_shared<MergeOpts>();
    auto* cmd = prepare->add_subcommand(
        "merge", "Merge movie + four product-review corpora with a "
                 "stratified 7500/2500 split");
    cmd->add_option("--movie", opts->movie, "movie corpus directory")
        ->required();
    cmd->add_option("--books", opts->books, "books corpus directory")
        ->required();
    cmd->add_option("--dvd", opts->dvd, "dvd corpus directory")->required();
    cmd->add_option("--electronics", opts->electronics,
                    "electronics corpus directory")
        ->required();
    cmd->add_option("--kitchen", opts->kitchen, "kitchen corpus directory")
        ->required();
    cmd->add_option("--out", opts->out, "output corpus directory")->required();
    cmd->add_option("--config", opts->config, "key=value config file");
    cmd->add_option("--seed", opts->seed, "PRNG seed");
    cmd->callback([opts, cmd] {
      ResolvedConfig resolved(cmd);
      resolved.load_file(opts->config);
      resolved.merge_seed("seed", opts->seed);
      resolved.record("out", opts->out);
      run_merge(*opts, resolved);
    });
  }
}

}  // namespace sentopic::cli
