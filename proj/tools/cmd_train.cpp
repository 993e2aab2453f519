#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>

#include "common.hpp"
#include "sentopic/errors.hpp"
#include "sentopic/eval.hpp"
#include "sentopic/reports.hpp"
#include "sentopic/training.hpp"

namespace sentopic::cli {
namespace {

struct TrainOpts {
  std::string data;
  std::string out;
  std::string config;
  std::string log_file;
  std::string mode = "joint";  // rs|joint
  std::string iteration_unit = "epochs";
  std::size_t hidden = 10;
  std::size_t epochs = 1000;
  double learning_rate = 0.001;
  std::size_t batch = 1;
  std::size_t cd = 1;
  double init_sigma = 1.0;
  std::uint64_t seed = 0;
  std::size_t checkpoint_every = 0;
  std::string checkpoint_dir;
  std::size_t probe_every = 0;
  std::size_t probe_docs = 100;
  std::size_t probe_ais_runs = 20;
  std::size_t probe_ais_temps = 200;
  std::size_t threads = 1;
};

void run_train(const TrainOpts& opts, ResolvedConfig& resolved) {
  if (opts.hidden == 0) {
    throw CLI::ValidationError("hidden", "hidden unit count must be >= 1");
  }
  ModelKind kind;
  if (opts.mode == "rs") {
    kind = ModelKind::replicated_softmax;
  } else if (opts.mode == "joint") {
    kind = ModelKind::joint;
  } else {
    throw CLI::ValidationError("mode", "expected 'rs' or 'joint'");
  }
  if (opts.iteration_unit != "epochs" && opts.iteration_unit != "updates") {
    throw CLI::ValidationError("iteration-unit",
                               "expected 'epochs' or 'updates'");
  }

  const Corpus corpus = Corpus::load(opts.data);

  TrainConfig config;
  config.learning_rate = opts.learning_rate;
  config.iterations = opts.epochs;
  config.iterations_are_updates = opts.iteration_unit == "updates";
  config.batch_size = opts.batch;
  config.cd_steps = opts.cd;
  config.init_sigma = opts.init_sigma;
  config.seed = opts.seed;
  config.hidden_units = opts.hidden;
  config.probe_interval =
      (opts.probe_every > 0 || opts.checkpoint_every > 0) ? 1 : 0;

  print_resolved(resolved);

  std::vector<Document> probe_docs;
  if (opts.probe_every > 0) {
    probe_docs = docs_for_split(corpus, "test");
    if (probe_docs.size() > opts.probe_docs) {
      probe_docs.resize(opts.probe_docs);
    }
  }

  std::vector<ProbeCallback> callbacks;
  if (opts.probe_every > 0) {
    callbacks.push_back([&](std::size_t epoch, const ModelParams& params,
                            TrainLog& log) {
      if (epoch % opts.probe_every != 0) {
        return;
      }
      ZEstimatorConfig z_config;
      z_config.ais_runs = opts.probe_ais_runs;
      z_config.ais_temperatures = opts.probe_ais_temps;
      z_config.seed = opts.seed + epoch;
      z_config.threads = opts.threads;
      const auto z = log_z_for_docs(params, probe_docs, z_config);
      const auto report = perplexity(params, probe_docs, z);
      log.add(epoch, -1, "ais_perplexity", report.perplexity);
      std::cout << "epoch " << epoch << " ais_perplexity "
                << format_double(report.perplexity) << '\n';
    });
  }
  if (opts.checkpoint_every > 0) {
    const std::string dir =
        opts.checkpoint_dir.empty() ? "." : opts.checkpoint_dir;
    std::filesystem::create_directories(dir);
    callbacks.push_back([&opts, dir](std::size_t epoch,
                                     const ModelParams& params, TrainLog&) {
      if (epoch == 0 || epoch % opts.checkpoint_every != 0) {
        return;
      }
      save_model(params, std::filesystem::path(dir) /
                             ("checkpoint_epoch" + std::to_string(epoch) +
                              ".bin"));
    });
  }

  const TrainResult result = train(corpus, config, kind, callbacks);
  save_model(result.params, opts.out);
  if (!opts.log_file.empty()) {
    write_train_log_csv(result.log, opts.log_file, resolved.lines());
  }
  std::cout << "model written to " << opts.out << " (K="
            << result.params.vocab_size() << ", H="
            << result.params.hidden_size() << ", S="
            << result.params.sentiment_size() << ")\n";
}

}  // namespace

void register_train(CLI::App& app) {
  auto opts = std::make_shared<TrainOpts>();
  auto* cmd = app.add_subcommand(
      "train", "Contrastive-divergence training of the baseline or joint "
               "model");
  cmd->add_option("--data", opts->data, "corpus directory")->required();
  cmd->add_option("--out", opts->out, "output model file")->required();
  cmd->add_option("--config", opts->config, "key=value config file");
  cmd->add_option("--mode", opts->mode, "rs|joint");
  cmd->add_option("--hidden", opts->hidden, "hidden units (topics)");
  cmd->add_option("--epochs", opts->epochs, "training iterations");
  cmd->add_option("--iteration-unit", opts->iteration_unit,
                  "what --epochs counts: epochs|updates");
  cmd->add_option("--lr", opts->learning_rate, "learning rate");
  cmd->add_option("--batch", opts->batch, "batch size");
  cmd->add_option("--cd", opts->cd, "CD chain steps k");
  cmd->add_option("--init-sigma", opts->init_sigma,
                  "Gaussian initialization std");
  cmd->add_option("--seed", opts->seed, "PRNG seed");
  cmd->add_option("--log", opts->log_file, "training log CSV path");
  cmd->add_option("--checkpoint-every", opts->checkpoint_every,
                  "checkpoint interval in epochs (0 = off)");
  cmd->add_option("--checkpoint-dir", opts->checkpoint_dir,
                  "checkpoint directory");
  cmd->add_option("--probe-every", opts->probe_every,
                  "AIS perplexity probe interval in epochs (0 = off)");
  cmd->add_option("--probe-docs", opts->probe_docs,
                  "max test documents per probe");
  cmd->add_option("--probe-ais-runs", opts->probe_ais_runs, "AIS runs");
  cmd->add_option("--probe-ais-temps", opts->probe_ais_temps,
                  "AIS temperature count");
  cmd->add_option("--threads", opts->threads, "evaluation thread cap");
  cmd->callback([opts, cmd] {
    ResolvedConfig resolved(cmd);
    resolved.load_file(opts->config);
    resolved.merge("mode", opts->mode);
    resolved.merge("hidden", opts->hidden);
    resolved.merge("epochs", opts->epochs);
    resolved.merge("iteration-unit", opts->iteration_unit);
    resolved.merge("lr", opts->learning_rate);
    resolved.merge("batch", opts->batch);
    resolved.merge("cd", opts->cd);
    resolved.merge("init-sigma", opts->init_sigma);
    resolved.merge_seed("seed", opts->seed);
    resolved.merge("log", opts->log_file);
    resolved.merge("checkpoint-every", opts->checkpoint_every);
    resolved.merge("checkpoint-dir", opts->checkpoint_dir);
    resolved.merge("probe-every", opts->probe_every);
    resolved.merge("probe-docs", opts->probe_docs);
    resolved.merge("probe-ais-runs", opts->probe_ais_runs);
    resolved.merge("probe-ais-temps", opts->probe_ais_temps);
    resolved.merge("threads", opts->threads);
    resolved.record("data", opts->data);
    resolved.record("out", opts->out);
    run_train(*opts, resolved);
  });
}

}  // namespace sentopic::cli
