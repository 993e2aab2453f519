#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "sentopic/corpus.hpp"
#include "sentopic/eval.hpp"
#include "sentopic/tasks.hpp"
#include "sentopic/training.hpp"

namespace {

using namespace sentopic;

struct Fixture {
  Corpus corpus;
  ModelParams params;
  Document doc;

  static const Fixture& get(std::size_t vocab_size, std::size_t hidden) {
    static std::map<std::pair<std::size_t, std::size_t>, Fixture> cache;
    auto& slot = cache[{vocab_size, hidden}];
    if (slot.corpus.documents.empty()) {
      SynthSpec spec;
      spec.vocab_size = vocab_size;
      spec.num_sentiments = 2;
      spec.num_topics = 2;
      spec.docs_per_topic = 100;
      spec.min_length = 30;
      spec.max_length = 30;
      spec.skew = 3.0;
      slot.corpus = synth_corpus(spec, 1);
      TrainConfig config;
      config.hidden_units = hidden;
      config.init_sigma = 0.1;
      config.seed = 2;
      slot.params = init_params(vocab_size, hidden, 2, config);
      slot.doc = slot.corpus.documents.front();
    }
    return slot;
  }
};

void BM_HiddenGivenVs(benchmark::State& state) {
  const auto& f = Fixture::get(state.range(0), state.range(1));
  for (auto _ : state) {
    auto probs = hidden_given_vs(f.params, f.doc, 0);
    benchmark::DoNotOptimize(probs);
  }
}
BENCHMARK(BM_HiddenGivenVs)->Args({200, 10})->Args({2000, 50})->Args({25000, 90});

void BM_FreeEnergyMarginal(benchmark::State& state) {
  const auto& f = Fixture::get(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_energy_marginal(f.params, f.doc));
  }
}
BENCHMARK(BM_FreeEnergyMarginal)->Args({200, 10})->Args({2000, 50});

void BM_CdStep(benchmark::State& state) {
  const auto& f = Fixture::get(state.range(0), state.range(1));
  Rng rng(3, "bench");
  for (auto _ : state) {
    auto grad = cd_step(f.params, f.doc, 0, 1, rng);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(BM_CdStep)->Args({200, 10})->Args({2000, 50});

void BM_SampleDocument(benchmark::State& state) {
  const auto& f = Fixture::get(state.range(0), state.range(1));
  Rng rng(4, "bench");
  const std::vector<double> hidden(f.params.hidden_size(), 1.0);
  for (auto _ : state) {
    auto doc = sample_document(f.params, hidden, 30, rng);
    benchmark::DoNotOptimize(doc);
  }
}
BENCHMARK(BM_SampleDocument)->Args({200, 10})->Args({2000, 50});

void BM_AisLogZ(benchmark::State& state) {
  const auto& f = Fixture::get(200, 10);
  for (auto _ : state) {
    Rng rng(5, "bench");
    auto estimate = ais_log_z(f.params, 30, 10, state.range(0), rng);
    benchmark::DoNotOptimize(estimate);
  }
}
BENCHMARK(BM_AisLogZ)->Arg(100)->Arg(500);

void BM_PrCurve(benchmark::State& state) {
  const auto& f = Fixture::get(200, 10);
  const std::vector<std::size_t> grid{1, 5, 10, 25};
  for (auto _ : state) {
    auto curve = pr_curve(f.corpus, f.params, grid, 1);
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_PrCurve);

}  // namespace

BENCHMARK_MAIN();
