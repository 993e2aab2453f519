// Acceptance suite: one pass/fail line per criterion. Each criterion is
// self-contained and fully seeded; rerunning the binary reproduces every
// number bit for bit. Run a single criterion with `acceptance --only N`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sentopic/corpus.hpp"
#include "sentopic/enumeration.hpp"
#include "sentopic/eval.hpp"
#include "sentopic/tasks.hpp"
#include "sentopic/training.hpp"
#include "test_util.hpp"

using namespace sentopic;
using sentopic::testutil::TinySpec;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> failures;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (failures.size() < 10) {
        failures.push_back(what);
      }
    }
  }
};

bool close_rel(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Conditional-oracle suite: closed-form conditionals and free energy vs
//    brute-force enumeration on 50 random tiny models, 1e-10 relative.
// ---------------------------------------------------------------------------
Check criterion1() {
  Check check;
  Rng rng(101, "acceptance-1");
  for (int trial = 0; trial < 50; ++trial) {
    const bool joint = trial % 2 == 0;
    TinySpec spec;
    spec.vocab_size = 2 + rng.uniform_index(3);   // K <= 4
    spec.hidden_size = 1 + rng.uniform_index(6);  // H <= 6
    spec.sentiment_size = joint ? 1 + rng.uniform_index(3) : 0;  // S <= 3
    spec.max_length = 3;                          // D <= 3
    const ModelParams params = testutil::random_params(spec, rng);
    const Document doc = testutil::random_document(spec, rng);
    const auto sentiment =
        joint ? std::optional<std::size_t>(*doc.sentiment) : std::nullopt;
    const std::string tag = "trial " + std::to_string(trial);

    const auto hidden_oracle = oracle::hidden_conditional(params, doc,
                                                          sentiment);
    const auto hidden_impl = joint ? hidden_given_vs(params, doc, *sentiment)
                                   : hidden_given_v(params, doc);
    for (std::size_t j = 0; j < hidden_oracle.size(); ++j) {
      check.expect(close_rel(hidden_impl[j], hidden_oracle[j], 1e-10),
                   tag + " hidden[" + std::to_string(j) + "]");
    }

    const auto hidden_state = testutil::random_binary(spec.hidden_size, rng);
    const auto word_oracle =
        oracle::word_conditional(params, doc.length, hidden_state);
    const auto word_impl = visible_softmax(params, hidden_state);
    for (std::size_t k = 0; k < word_oracle.size(); ++k) {
      check.expect(close_rel(word_impl[k], word_oracle[k], 1e-10),
                   tag + " word[" + std::to_string(k) + "]");
    }

    if (joint) {
      const auto sent_oracle =
          oracle::sentiment_conditional(params, doc.length, hidden_state);
      const auto sent_impl = sentiment_softmax(params, hidden_state);
      for (std::size_t l = 0; l < sent_oracle.size(); ++l) {
        check.expect(close_rel(sent_impl[l], sent_oracle[l], 1e-10),
                     tag + " sentiment[" + std::to_string(l) + "]");
      }
    }

    const double fe_oracle = oracle::log_free_energy(params, doc, sentiment);
    const double fe_impl = joint ? free_energy(params, doc, *sentiment)
                                 : free_energy(params, doc);
    check.expect(close_rel(fe_impl, fe_oracle, 1e-10), tag + " free energy");
  }
  return check;
}

// ---------------------------------------------------------------------------
// 2. Exact gradient vs central finite differences (step 1e-5, 1e-6 per
//    coordinate) on 20 random tiny instances.
// ---------------------------------------------------------------------------
Check criterion2() {
  Check check;
  Rng rng(202, "acceptance-2");
  for (int trial = 0; trial < 20; ++trial) {
    const bool joint = trial % 2 == 0;
    TinySpec spec;
    spec.vocab_size = 2 + rng.uniform_index(2);
    spec.hidden_size = 1 + rng.uniform_index(3);
    spec.sentiment_size = joint ? 1 + rng.uniform_index(2) : 0;
    spec.max_length = 3;
    ModelParams params = testutil::random_params(spec, rng, 0.8);
    std::vector<Document> docs;
    const std::size_t n_docs = 1 + rng.uniform_index(3);
    for (std::size_t i = 0; i < n_docs; ++i) {
      docs.push_back(testutil::random_document(spec, rng));
    }

    const std::vector<double> grad = exact_gradient(params, docs).flatten();
    auto coords = testutil::param_coordinates(params);
    const double step = 1e-5;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const double saved = *coords[i];
      *coords[i] = saved + step;
      const double plus = exact_log_likelihood(params, docs);
      *coords[i] = saved - step;
      const double minus = exact_log_likelihood(params, docs);
      *coords[i] = saved;
      const double fd = (plus - minus) / (2.0 * step);
      check.expect(std::abs(grad[i] - fd) <= 1e-6,
                   "trial " + std::to_string(trial) + " coord " +
                       std::to_string(i) + ": " + fmt(grad[i]) + " vs " +
                       fmt(fd));
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// 3. Partition function: count-level formula vs sequence-level enumeration
//    (1e-10, K=3, D=3), and AIS within 2% of exact log Z on 10 tiny trained
//    models (runs=100, temps=1000).
// ---------------------------------------------------------------------------
Check criterion3() {
  Check check;
  Rng rng(303, "acceptance-3");
  for (int trial = 0; trial < 6; ++trial) {
    TinySpec spec;
    spec.vocab_size = 3;
    spec.hidden_size = 1 + rng.uniform_index(4);
    spec.sentiment_size = trial % 2 == 0 ? 2 : 0;
    const ModelParams params = testutil::random_params(spec, rng);
    const double count_level = exact_log_z(params, 3).log_z;
    const double sequence_level = oracle::sequence_log_z(params, 3);
    check.expect(close_rel(count_level, sequence_level, 1e-10),
                 "count vs sequence log Z, trial " + std::to_string(trial));
  }

  SynthSpec spec;
  spec.vocab_size = 4;
  spec.num_sentiments = 2;
  spec.num_topics = 1;
  spec.docs_per_topic = 30;
  spec.min_length = 3;
  spec.max_length = 3;
  spec.skew = 2.0;
  spec.train_fraction = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Corpus corpus = synth_corpus(spec, 300 + trial);
    TrainConfig config;
    config.seed = trial;
    config.hidden_units = 4;
    config.iterations = 30;
    config.learning_rate = 0.05;
    config.init_sigma = 0.5;
    const auto params =
        train(corpus, config,
              trial % 2 == 0 ? ModelKind::joint
                             : ModelKind::replicated_softmax)
            .params;
    const double exact = exact_log_z(params, 3).log_z;
    Rng ais_rng(404 + trial, "acceptance-3-ais");
    const auto estimate = ais_log_z(params, 3, 100, 1000, ais_rng);
    check.expect(std::abs(estimate.log_z - exact) <= 0.02 * std::abs(exact),
                 "ais trial " + std::to_string(trial) + ": " +
                     fmt(estimate.log_z) + " vs exact " + fmt(exact));
  }
  return check;
}

// ---------------------------------------------------------------------------
// 4. Zero-model closed form: perplexity of the all-zero model equals K
//    within 1e-6, through both the exact and the AIS pipeline.
// ---------------------------------------------------------------------------
Check criterion4() {
  Check check;
  {
    // exact path at tiny scale
    const std::size_t vocab_size = 6;
    const ModelParams params = ModelParams::zeros(vocab_size, 4, 2);
    Rng rng(7, "acceptance-4");
    TinySpec spec{vocab_size, 4, 2, 3};
    std::vector<Document> docs;
    for (int i = 0; i < 10; ++i) {
      docs.push_back(testutil::random_document(spec, rng));
    }
    ZEstimatorConfig z_config;
    z_config.use_ais = false;
    const auto z = log_z_for_docs(params, docs, z_config);
    const auto report = perplexity(params, docs, z);
    check.expect(std::abs(report.perplexity - 6.0) <= 1e-6,
                 "exact-path perplexity " + fmt(report.perplexity));
  }
  {
    // AIS path at desk scale (zero weights keep AIS exact)
    const std::size_t vocab_size = 50;
    const ModelParams rs = ModelParams::zeros(vocab_size, 8, 0);
    const ModelParams joint = ModelParams::zeros(vocab_size, 8, 2);
    SynthSpec spec;
    spec.vocab_size = vocab_size;
    spec.num_sentiments = 2;
    spec.num_topics = 1;
    spec.docs_per_topic = 40;
    spec.min_length = 15;
    spec.max_length = 35;
    spec.skew = 1.0;
    const Corpus corpus = synth_corpus(spec, 44);
    ZEstimatorConfig z_config;
    z_config.use_ais = true;
    z_config.ais_runs = 20;
    z_config.ais_temperatures = 100;
    z_config.seed = 5;
    for (const ModelParams* params : {&rs, &joint}) {
      const auto z = log_z_for_docs(*params, corpus.documents, z_config);
      const auto report = perplexity(*params, corpus.documents, z);
      check.expect(std::abs(report.perplexity - 50.0) <= 1e-6,
                   "ais-path perplexity " + fmt(report.perplexity));
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// 5. Training direction: K=200, 400 train docs, H=10, 200 epochs. AIS
//    perplexity declines for both models on every seed; the joint model ends
//    at or below the baseline in >= 7 of 10 seeds.
// ---------------------------------------------------------------------------
Check criterion5() {
  Check check;
  SynthSpec spec;
  spec.vocab_size = 200;
  spec.num_sentiments = 2;
  spec.num_topics = 1;
  spec.docs_per_topic = 500;  // 400 train / 100 test at 0.8
  spec.min_length = 10;
  spec.max_length = 10;
  spec.skew = 6.0;
  spec.train_fraction = 0.8;

  int joint_wins = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const Corpus corpus = synth_corpus(spec, 5000 + seed);
    std::vector<Document> test_docs;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      if (corpus.split[i] == Split::test) {
        test_docs.push_back(corpus.documents[i]);
      }
    }
    auto ais_perplexity = [&](const ModelParams& params, int tag) {
      ZEstimatorConfig z_config;
      z_config.ais_runs = 60;
      z_config.ais_temperatures = 300;
      z_config.seed = 77 + seed * 17 + tag;
      z_config.threads = 8;
      const auto z = log_z_for_docs(params, test_docs, z_config);
      return perplexity(params, test_docs, z).perplexity;
    };

    TrainConfig config;
    config.learning_rate = 0.005;
    config.iterations = 200;
    config.init_sigma = 0.5;
    config.seed = seed;
    config.hidden_units = 10;

    const ModelParams rs_init = init_params(200, 10, 0, config);
    const double rs_start = ais_perplexity(rs_init, 0);
    const ModelParams rs_final =
        train(corpus, config, ModelKind::replicated_softmax).params;
    const double rs_end = ais_perplexity(rs_final, 1);

    const ModelParams joint_init = init_params(200, 10, 2, config);
    const double joint_start = ais_perplexity(joint_init, 2);
    const ModelParams joint_final =
        train(corpus, config, ModelKind::joint).params;
    const double joint_end = ais_perplexity(joint_final, 3);

    check.expect(rs_end < rs_start,
                 "seed " + std::to_string(seed) + ": baseline " +
                     fmt(rs_start) + " -> " + fmt(rs_end) + " did not decline");
    check.expect(joint_end < joint_start,
                 "seed " + std::to_string(seed) + ": joint " +
                     fmt(joint_start) + " -> " + fmt(joint_end) +
                     " did not decline");
    joint_wins += joint_end <= rs_end ? 1 : 0;
    std::printf("    seed %d: baseline %s -> %s | joint %s -> %s\n", seed,
                fmt(rs_start).c_str(), fmt(rs_end).c_str(),
                fmt(joint_start).c_str(), fmt(joint_end).c_str());
    std::fflush(stdout);
  }
  check.expect(joint_wins >= 7, "joint won only " +
                                    std::to_string(joint_wins) +
                                    "/10 seeds (need >= 7)");
  std::printf("    joint at or below baseline in %d/10 seeds\n", joint_wins);
  return check;
}

// ---------------------------------------------------------------------------
// 6. Classification: trained joint model beats the count baseline by >= 5
//    accuracy points (median over 10 seeds); the baseline scores 100% on a
//    corpus built purely from lexicon words.
// ---------------------------------------------------------------------------
Check criterion6() {
  Check check;
  SynthSpec spec;
  spec.vocab_size = 200;
  spec.num_sentiments = 2;
  spec.num_topics = 1;
  spec.docs_per_topic = 500;
  spec.min_length = 10;
  spec.max_length = 10;
  spec.skew = 6.0;
  spec.train_fraction = 0.8;

  std::vector<double> gaps;
  for (int seed = 0; seed < 10; ++seed) {
    const Corpus corpus = synth_corpus(spec, 6000 + seed);
    // partial lexicon: the first 30% of each sentiment block
    SentimentLexicon lexicon;
    for (std::size_t s = 0; s < 2; ++s) {
      const auto [begin, end] = synth_sentiment_block(spec, s);
      const std::size_t take = (end - begin) * 3 / 10;
      for (std::size_t i = 0; i < take; ++i) {
        lexicon.add(corpus.vocabulary.word(begin + i),
                    s == 1 ? SentimentLexicon::Weights{0.0, 1.0, 0.0}
                           : SentimentLexicon::Weights{0.0, 0.0, 1.0});
      }
    }
    const LexiconOverlap overlap =
        lexicon_intersection(corpus.vocabulary, lexicon);

    TrainConfig config;
    config.learning_rate = 0.005;
    config.iterations = 200;
    config.init_sigma = 0.5;
    config.seed = seed;
    config.hidden_units = 10;
    const ModelParams params = train(corpus, config, ModelKind::joint).params;

    std::size_t n = 0, model_ok = 0, baseline_ok = 0;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      if (corpus.split[i] != Split::test) {
        continue;
      }
      const Document& doc = corpus.documents[i];
      ++n;
      model_ok +=
          classify_sentiment(params, doc).label == *doc.sentiment ? 1 : 0;
      baseline_ok += count_baseline(doc, overlap) == *doc.sentiment ? 1 : 0;
    }
    const double gap = 100.0 * (static_cast<double>(model_ok) -
                                static_cast<double>(baseline_ok)) /
                       static_cast<double>(n);
    gaps.push_back(gap);
    std::printf("    seed %d: model %.1f%% baseline %.1f%%\n", seed,
                100.0 * static_cast<double>(model_ok) / static_cast<double>(n),
                100.0 * static_cast<double>(baseline_ok) /
                    static_cast<double>(n));
    std::fflush(stdout);
  }
  std::sort(gaps.begin(), gaps.end());
  const double median = gaps[gaps.size() / 2];
  std::printf("    median accuracy gap %.1f points\n", median);
  check.expect(median >= 5.0,
               "median gap " + fmt(median) + " below 5 points");

  // lexicon-only corpus: every token is a polar word of the document label
  {
    Vocabulary vocab({"down", "up"});  // index = label: 0 negative, 1 positive
    SentimentLexicon lexicon;
    lexicon.add("down", {0.0, 0.0, 1.0});
    lexicon.add("up", {0.0, 1.0, 0.0});
    const LexiconOverlap overlap = lexicon_intersection(vocab, lexicon);
    Rng rng(66, "acceptance-6");
    std::size_t correct = 0;
    const std::size_t total = 100;
    for (std::size_t i = 0; i < total; ++i) {
      const std::uint32_t label = i % 2;
      std::vector<std::uint32_t> counts(2, 0);
      counts[label] = 1 + static_cast<std::uint32_t>(rng.uniform_index(9));
      const Document doc = make_document(counts);
      correct += count_baseline(doc, overlap) == label ? 1 : 0;
    }
    check.expect(correct == total, "lexicon-only baseline not 100%");
  }
  return check;
}

// ---------------------------------------------------------------------------
// 7. Retrieval: oracle one-hot representations give precision 1.0; random
//    representations sit at the topic base rate within 3 sigma; a trained
//    joint model beats the base rate at depth 10.
// ---------------------------------------------------------------------------
Check criterion7() {
  Check check;
  {
    // oracle representations: 2 topics, 30 train docs each
    std::vector<std::uint32_t> train_topics, test_topics;
    for (std::size_t i = 0; i < 60; ++i) {
      train_topics.push_back(i % 2);
    }
    for (std::size_t i = 0; i < 10; ++i) {
      test_topics.push_back(i % 2);
    }
    Matrix train_reps(60, 2), test_reps(10, 2);
    for (std::size_t i = 0; i < train_topics.size(); ++i) {
      train_reps(i, train_topics[i]) = 1.0;
    }
    for (std::size_t i = 0; i < test_topics.size(); ++i) {
      test_reps(i, test_topics[i]) = 1.0;
    }
    const std::vector<std::size_t> k_grid{1, 5, 10, 20, 30};
    const PRCurve curve = pr_curve(test_reps, test_topics, train_reps,
                                   train_topics, k_grid);
    for (const auto& point : curve.points) {
      check.expect(point.precision == 1.0,
                   "oracle precision at k=" + std::to_string(point.k) +
                       " is " + fmt(point.precision));
    }
    check.expect(curve.points.back().recall == 1.0,
                 "oracle recall did not reach 1.0");
  }
  {
    // random representations: base rate 0.5
    Rng rng(71, "acceptance-7");
    const std::size_t train_n = 400, test_n = 200, depth = 10;
    std::vector<std::uint32_t> train_topics, test_topics;
    for (std::size_t i = 0; i < train_n; ++i) {
      train_topics.push_back(i % 2);
    }
    for (std::size_t i = 0; i < test_n; ++i) {
      test_topics.push_back(i % 2);
    }
    Matrix train_reps(train_n, 8), test_reps(test_n, 8);
    for (double& x : train_reps.flat()) {
      x = rng.normal();
    }
    for (double& x : test_reps.flat()) {
      x = rng.normal();
    }
    const std::vector<std::size_t> k_grid{depth};
    const PRCurve curve = pr_curve(test_reps, test_topics, train_reps,
                                   train_topics, k_grid, 8);
    const double sigma =
        std::sqrt(0.25 / static_cast<double>(test_n * depth));
    check.expect(std::abs(curve.points[0].precision - 0.5) <= 3.0 * sigma,
                 "random-representation precision " +
                     fmt(curve.points[0].precision) +
                     " off base rate 0.5 (3 sigma = " + fmt(3.0 * sigma) +
                     ")");
    std::printf("    random reps: precision@10 %s (base rate 0.5)\n",
                fmt(curve.points[0].precision).c_str());
  }
  {
    // trained joint model on the 2-topic corpus
    SynthSpec spec;
    spec.vocab_size = 200;
    spec.num_sentiments = 2;
    spec.num_topics = 2;
    spec.docs_per_topic = 250;
    spec.min_length = 20;
    spec.max_length = 20;
    spec.skew = 4.0;
    spec.train_fraction = 0.8;
    const Corpus corpus = synth_corpus(spec, 7000);
    TrainConfig config;
    config.learning_rate = 0.005;
    config.iterations = 200;
    config.init_sigma = 0.5;
    config.seed = 0;
    config.hidden_units = 10;
    const ModelParams params = train(corpus, config, ModelKind::joint).params;
    const std::vector<std::size_t> k_grid{10};
    const PRCurve curve = pr_curve(corpus, params, k_grid, 8);
    std::printf("    trained joint: precision@10 %s (base rate 0.5)\n",
                fmt(curve.points[0].precision).c_str());
    check.expect(curve.points[0].precision > 0.5,
                 "trained precision@10 " + fmt(curve.points[0].precision) +
                     " not above base rate");
  }
  return check;
}

// ---------------------------------------------------------------------------
// 8. Topic tagging mechanics on handcrafted parameters with known polarity
//    structure; all four procedure steps verified independently.
// ---------------------------------------------------------------------------
Check criterion8() {
  Check check;
  // 6 positive words, 6 negative words, 4 fillers; H = 12
  std::vector<std::string> words;
  for (int i = 0; i < 6; ++i) words.push_back("pos" + std::to_string(i));
  for (int i = 0; i < 6; ++i) words.push_back("neg" + std::to_string(i));
  for (int i = 0; i < 4; ++i) words.push_back("fill" + std::to_string(i));
  const Vocabulary vocab(words);
  SentimentLexicon lexicon;
  for (int i = 0; i < 6; ++i) {
    lexicon.add("pos" + std::to_string(i), {0.0, 1.0, 0.0});
    lexicon.add("neg" + std::to_string(i), {0.0, 0.0, 1.0});
  }

  const std::size_t hidden = 12;
  ModelParams params = ModelParams::zeros(16, hidden, 2);
  // topics 0..4 load positive words with decreasing strength, topics 7..11
  // load negative words in mirrored order; 5 and 6 stay neutral
  for (std::size_t r = 0; r < 5; ++r) {
    const double strength = 5.0 - static_cast<double>(r);
    for (std::size_t w = 0; w < 6; ++w) {
      params.visible_hidden(w, r) = strength;           // positive rows
      params.visible_hidden(6 + w, 11 - r) = strength;  // negative rows
    }
    params.sentiment_hidden(1, r) = 1.0;
    params.sentiment_hidden(0, r) = -1.0;
    params.sentiment_hidden(0, 11 - r) = 1.0;
    params.sentiment_hidden(1, 11 - r) = -1.0;
  }

  const auto report = topic_sentiment_report(params, vocab, lexicon);

  // step 1: per-topic polar word masses
  for (std::size_t r = 0; r < 5; ++r) {
    const double strength = 5.0 - static_cast<double>(r);
    check.expect(report.per_topic[r].positive_mass == 6.0 * strength,
                 "step 1 positive mass, topic " + std::to_string(r));
    check.expect(report.per_topic[r].negative_mass == 0.0,
                 "step 1 negative mass, topic " + std::to_string(r));
    check.expect(report.per_topic[11 - r].negative_mass == 6.0 * strength,
                 "step 1 negative mass, topic " + std::to_string(11 - r));
  }
  // step 2: the difference ordering is exactly 0..4, then 5,6, then 11..7
  std::vector<std::size_t> order(hidden);
  for (std::size_t j = 0; j < hidden; ++j) {
    order[j] = j;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = report.per_topic[a].positive_mass -
                      report.per_topic[a].negative_mass;
    const double db = report.per_topic[b].positive_mass -
                      report.per_topic[b].negative_mass;
    if (da != db) return da > db;
    return a < b;
  });
  const std::vector<std::size_t> expected_order{0, 1, 2, 3, 4,  5,
                                                6, 7, 8, 9, 10, 11};
  check.expect(order == expected_order, "step 2 ordering");
  // step 3: exactly five positive and five negative tags at the extremes
  for (std::size_t r = 0; r < 5; ++r) {
    check.expect(report.per_topic[r].tag == 1,
                 "step 3 positive tag, topic " + std::to_string(r));
    check.expect(report.per_topic[11 - r].tag == -1,
                 "step 3 negative tag, topic " + std::to_string(11 - r));
  }
  check.expect(report.per_topic[5].tag == 0, "step 3 untagged topic 5");
  check.expect(report.per_topic[6].tag == 0, "step 3 untagged topic 6");
  check.expect(report.tags_per_side == 5, "step 3 tag count");
  // step 4: sentiment-layer agreement on every tag, precision 1.0
  for (const auto& row : report.per_topic) {
    if (row.tag != 0) {
      check.expect(row.agrees,
                   "step 4 agreement, topic " + std::to_string(row.topic));
    }
  }
  check.expect(report.precision == 1.0,
               "precision " + fmt(report.precision) + " != 1");

  // flipping the sentiment rows must drop the precision to zero
  ModelParams flipped = params;
  for (std::size_t j = 0; j < hidden; ++j) {
    std::swap(flipped.sentiment_hidden(0, j), flipped.sentiment_hidden(1, j));
  }
  const auto flipped_report = topic_sentiment_report(flipped, vocab, lexicon);
  check.expect(flipped_report.precision == 0.0,
               "flipped precision " + fmt(flipped_report.precision) +
                   " != 0");
  return check;
}

// ---------------------------------------------------------------------------
// 9. Determinism: every CLI command rerun with identical inputs produces
//    bit-identical artifacts.
// ---------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Check criterion9() {
  Check check;
  const char* cli_env = std::getenv("SENTOPIC_CLI");
  if (cli_env == nullptr) {
    check.expect(false, "SENTOPIC_CLI not set (run through ctest)");
    return check;
  }
  const std::string cli = cli_env;
  const auto root = std::filesystem::temp_directory_path() /
                    "sentopic-acceptance-9";
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);

  auto run = [&](const std::string& args) {
    const std::string command = cli + " " + args + " > /dev/null 2> /dev/null";
    return std::system(command.c_str());
  };

  // small raw-text tree for `prepare corpus`
  for (const std::string cls : {"alpha", "beta"}) {
    std::filesystem::create_directories(root / "raw" / cls);
    for (int i = 0; i < 4; ++i) {
      std::ofstream out(root / "raw" / cls /
                        ("doc" + std::to_string(i) + ".txt"));
      out << (cls == "alpha" ? "The movies were great and moving"
                             : "The kitchen knives were awful and dull")
          << " item " << i << "\n";
    }
  }
  // lexicon over the synthetic vocabulary (sentiment blocks of K=200/S=2
  // sit at w100.. and w150..)
  {
    std::ofstream lex(root / "lexicon.txt");
    for (int i = 0; i < 15; ++i) {
      lex << 'w' << 100 + i << " 0.0 0.0 1.0\n";
      lex << 'w' << 150 + i << " 0.0 1.0 0.0\n";
    }
  }
  // five balanced 1000+1000 parts for `prepare merge`; short documents keep
  // this fast
  for (int part = 0; part < 5; ++part) {
    const std::string dir = (root / ("part" + std::to_string(part))).string();
    check.expect(run("prepare synth --out " + dir +
                     " --k 30 --docs 2000 --topics 1 --sentiments 2 "
                     "--min-len 3 --max-len 5 --skew 1.0 --seed " +
                     std::to_string(40 + part)) == 0,
                 "prepare synth part " + std::to_string(part));
  }

  const std::string data = (root / "data").string();
  struct Step {
    std::string name;
    std::string args;
    std::vector<std::string> artifacts;
  };
  const std::vector<Step> steps = {
      {"prepare synth",
       "prepare synth --out " + data +
           " --k 200 --docs 400 --topics 2 --sentiments 2 --min-len 8 "
           "--max-len 14 --skew 4.0 --train-fraction 0.8 --seed 11",
       {data + "/vocabulary.txt", data + "/documents.tsv",
        data + "/split.txt"}},
      {"prepare corpus",
       "prepare corpus --input " + (root / "raw").string() + " --out " +
           (root / "rawout").string() + " --max-vocab 12 --seed 3",
       {(root / "rawout/vocabulary.txt").string(),
        (root / "rawout/documents.tsv").string(),
        (root / "rawout/split.txt").string()}},
      {"prepare tag",
       "prepare tag --data " + data + " --lexicon " +
           (root / "lexicon.txt").string() + " --out " +
           (root / "tagged").string(),
       {(root / "tagged/documents.tsv").string(),
        (root / "tagged/split.txt").string()}},
      {"prepare merge",
       "prepare merge --movie " + (root / "part0").string() + " --books " +
           (root / "part1").string() + " --dvd " + (root / "part2").string() +
           " --electronics " + (root / "part3").string() + " --kitchen " +
           (root / "part4").string() + " --out " +
           (root / "merged").string() + " --seed 9",
       {(root / "merged/documents.tsv").string(),
        (root / "merged/split.txt").string()}},
      {"train joint",
       "train --data " + data + " --out " + (root / "joint.bin").string() +
           " --mode joint --hidden 6 --epochs 8 --lr 0.005 --init-sigma 0.5 "
           "--seed 21 --log " + (root / "joint_log.csv").string(),
       {(root / "joint.bin").string(), (root / "joint_log.csv").string()}},
      {"train rs",
       "train --data " + data + " --out " + (root / "rs.bin").string() +
           " --mode rs --hidden 6 --epochs 8 --lr 0.005 --init-sigma 0.5 "
           "--seed 21",
       {(root / "rs.bin").string()}},
      {"eval perplexity (ais)",
       "eval perplexity --model " + (root / "joint.bin").string() +
           " --data " + data +
           " --method ais --ais-runs 20 --ais-temps 100 --seed 13 "
           "--threads 4 --out " + (root / "ppl.csv").string(),
       {(root / "ppl.csv").string()}},
      {"eval classify",
       "eval classify --model " + (root / "joint.bin").string() + " --data " +
           data + " --lexicon " + (root / "lexicon.txt").string() +
           " --out " + (root / "cls.csv").string(),
       {(root / "cls.csv").string()}},
      {"eval retrieve",
       "eval retrieve --model " + (root / "joint.bin").string() + " --data " +
           data + " --k-grid 1,5,10 --threads 4 --out " +
           (root / "pr.csv").string(),
       {(root / "pr.csv").string()}},
      {"eval topics",
       "eval topics --model " + (root / "joint.bin").string() + " --data " +
           data + " --lexicon " + (root / "lexicon.txt").string() +
           " --out " + (root / "topics.csv").string(),
       {(root / "topics.csv").string()}},
      {"eval mlp",
       "eval mlp --model " + (root / "joint.bin").string() + " --data " +
           data + " --epochs 5 --lr 0.01 --seed 17 --out " +
           (root / "mlp.csv").string(),
       {(root / "mlp.csv").string()}},
  };

  for (const auto& step : steps) {
    check.expect(run(step.args) == 0, step.name + " (first run) failed");
    std::map<std::string, std::string> first;
    for (const auto& artifact : step.artifacts) {
      first[artifact] = slurp(artifact);
      check.expect(!first[artifact].empty(),
                   step.name + ": empty artifact " + artifact);
    }
    check.expect(run(step.args) == 0, step.name + " (second run) failed");
    for (const auto& artifact : step.artifacts) {
      check.expect(
          slurp(artifact) == first[artifact],
          step.name + ": artifact changed between runs: " + artifact);
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// 10. MLP warm start: warm-started accuracy >= random-init accuracy in the
//     median over 10 paired seeds; MLP gradients pass the finite-difference
//     check at 1e-5.
// ---------------------------------------------------------------------------
Check criterion10() {
  Check check;
  SynthSpec spec;
  spec.vocab_size = 200;
  spec.num_sentiments = 2;
  spec.num_topics = 1;
  spec.docs_per_topic = 500;
  spec.min_length = 10;
  spec.max_length = 10;
  spec.skew = 6.0;
  spec.train_fraction = 0.8;

  std::vector<double> diffs;
  for (int seed = 0; seed < 10; ++seed) {
    const Corpus corpus = synth_corpus(spec, 8000 + seed);
    std::vector<Document> train_docs, test_docs;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      (corpus.split[i] == Split::train ? train_docs : test_docs)
          .push_back(corpus.documents[i]);
    }
    TrainConfig config;
    config.learning_rate = 0.005;
    config.iterations = 100;
    config.init_sigma = 0.5;
    config.seed = seed;
    config.hidden_units = 10;
    const ModelParams params = train(corpus, config, ModelKind::joint).params;

    double mean_length = 0.0;
    for (const auto& doc : train_docs) {
      mean_length += static_cast<double>(doc.length);
    }
    mean_length /= static_cast<double>(train_docs.size());

    MlpClassifier warm = MlpClassifier::warm_start(params, mean_length);
    Rng init_rng(seed, "mlp-init");
    MlpClassifier random_arm =
        MlpClassifier::random_init(spec.vocab_size, 10, 2, 1.0, init_rng);
    Rng warm_rng(seed, "mlp-train", 0);
    Rng random_rng(seed, "mlp-train", 1);
    mlp_train(warm, train_docs, 20, 0.01, warm_rng);
    mlp_train(random_arm, train_docs, 20, 0.01, random_rng);
    const double warm_acc = mlp_accuracy(warm, test_docs);
    const double random_acc = mlp_accuracy(random_arm, test_docs);
    diffs.push_back(warm_acc - random_acc);
    std::printf("    seed %d: warm %.3f random %.3f\n", seed, warm_acc,
                random_acc);
    std::fflush(stdout);
  }
  std::sort(diffs.begin(), diffs.end());
  const double median = diffs[diffs.size() / 2];
  std::printf("    median accuracy difference %+.3f\n", median);
  check.expect(median >= 0.0,
               "median difference " + fmt(median) + " favors random init");

  // finite-difference gradient check
  Rng rng(1010, "acceptance-10");
  TinySpec tiny{5, 4, 2, 4};
  const ModelParams params = testutil::random_params(tiny, rng, 0.5);
  MlpClassifier mlp = MlpClassifier::warm_start(params, 3.0);
  const Document doc = testutil::random_document(tiny, rng);
  const std::size_t label = *doc.sentiment;
  const MlpGradients grads = mlp_gradients(mlp, doc, label);
  const double step = 1e-6;
  auto check_block = [&](std::span<double> block,
                         std::span<const double> grad_block,
                         const std::string& name) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      const double saved = block[i];
      block[i] = saved + step;
      const double plus = mlp_loss(mlp, doc, label);
      block[i] = saved - step;
      const double minus = mlp_loss(mlp, doc, label);
      block[i] = saved;
      const double fd = (plus - minus) / (2.0 * step);
      check.expect(std::abs(grad_block[i] - fd) <=
                       1e-5 * std::max(1.0, std::abs(fd)),
                   "mlp gradient " + name + "[" + std::to_string(i) + "]");
    }
  };
  check_block(mlp.input_hidden.flat(), grads.input_hidden.flat(), "W1");
  check_block(mlp.hidden_bias, grads.hidden_bias, "b1");
  check_block(mlp.hidden_output.flat(), grads.hidden_output.flat(), "W2");
  check_block(mlp.output_bias, grads.output_bias, "b2");
  return check;
}

struct Criterion {
  int number;
  const char* label;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "conditional-oracle suite (1e-10 relative)", criterion1},
      {2, "exact gradient vs finite differences (1e-6)", criterion2},
      {3, "partition-function cross-check (1e-10 / 2%)", criterion3},
      {4, "zero-model perplexity equals K (1e-6)", criterion4},
      {5, "training direction: decline + joint <= baseline", criterion5},
      {6, "classification beats count baseline by >= 5 points", criterion6},
      {7, "retrieval: oracle / random / trained model", criterion7},
      {8, "topic tagging mechanics, four steps", criterion8},
      {9, "CLI determinism: bit-identical artifacts", criterion9},
      {10, "MLP warm start >= random init; gradient check", criterion10},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (only != 0 && criterion.number != only) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const Check check = criterion.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    std::printf("[%s] criterion %2d: %s (%.1fs)\n",
                check.ok ? "PASS" : "FAIL", criterion.number, criterion.label,
                seconds);
    for (const auto& failure : check.failures) {
      std::printf("       %s\n", failure.c_str());
    }
    std::fflush(stdout);
    failures += check.ok ? 0 : 1;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
