#include "seqcast/cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "seqcast/atomic_file.hpp"

namespace seqcast::cli {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_logger_st("seqcast");
    l->set_pattern("[seqcast] [%l] %v");
    const char* env = std::getenv("SEQCAST_LOG");
    const std::string level = env ? env : "info";
    if (level == "debug") {
      l->set_level(spdlog::level::debug);
    } else if (level == "error") {
      l->set_level(spdlog::level::err);
    } else {
      l->set_level(spdlog::level::info);
    }
    return l;
  }();
  return log;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json config_json(const TrainConfig& c) {
  return {{"hidden_dim", c.hidden_dim},       {"learning_rate", c.learning_rate},
          {"epochs", c.epochs},               {"window", c.window},
          {"seed", c.seed},                   {"adam_beta1", c.adam_beta1},
          {"adam_beta2", c.adam_beta2},       {"adam_epsilon", c.adam_epsilon},
          {"shuffle", c.shuffle},             {"clip_norm", c.clip_norm}};
}

/// Tracks files written by one command so a failure can roll them back.
class OutputSet {
 public:
  void write(const fs::path& path, const std::string& bytes) {
    write_file_atomically(path, bytes);
    written_.push_back(path);
  }
  void rollback() noexcept {
    for (const auto& p : written_) {
      std::error_code ignored;
      fs::remove(p, ignored);
    }
    written_.clear();
  }

 private:
  std::vector<fs::path> written_;
};

SeriesDataset load_series(const fs::path& path, Variable variable) {
  return SeriesDataset(load_csv(path), variable);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw DataError("cannot create output directory " + dir.string());
  }
}

}  // namespace

TrainResult cmd_train(const TrainOptions& opts, const EpochCallback& on_epoch) {
  const auto started = std::chrono::steady_clock::now();
  opts.config.validate();
  const auto data = load_series(opts.data, opts.variable);
  logger()->info("loaded {} monthly records from {}", data.size(), opts.data.string());
  const auto [train_set, test_set] = split(data, opts.cutoff_year);
  const auto spec = fit_normalization(train_set);
  const auto samples = make_windows(train_set, spec, static_cast<std::size_t>(opts.config.window));
  logger()->info("training {} on {} windows ({} test months held out)",
                 to_string(opts.variable), samples.size(), test_set.size());

  auto report = train(samples, spec, opts.config, [&](int epoch, double loss) {
    logger()->debug("epoch {} mean loss {:.6g}", epoch, loss);
    if (on_epoch) on_epoch(epoch, loss);
  });

  ensure_dir(opts.out_dir);
  TrainResult result;
  result.model_path = opts.out_dir / kModelFile;
  result.loss_path = opts.out_dir / kLossFile;
  result.manifest_path = opts.out_dir / kTrainManifest;

  OutputSet outputs;
  try {
    SavedModel model{report.parameters, spec, opts.config.window, std::string(to_string(opts.variable))};
    std::ostringstream model_bytes(std::ios::binary);
    write_model(model_bytes, model);
    outputs.write(result.model_path, model_bytes.str());

    std::ostringstream loss;
    loss << "# variable=" << to_string(opts.variable)
         << "; loss=mean squared error on normalized targets, averaged over the epoch\n";
    loss << "epoch,mean_loss\n";
    for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
      loss << (e + 1) << ',' << fmt_double(report.epoch_loss[e]) << '\n';
    }
    outputs.write(result.loss_path, loss.str());

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json manifest = {{"tool_version", kToolVersion},
                     {"command", "train"},
                     {"variable", to_string(opts.variable)},
                     {"dataset", {{"path", opts.data.string()}, {"rows", data.size()}}},
                     {"cutoff_year", opts.cutoff_year},
                     {"train_windows", samples.size()},
                     {"normalization",
                      {{"min", spec.min}, {"max", spec.max}, {"lo", spec.lo}, {"hi", spec.hi}}},
                     {"config", config_json(opts.config)},
                     {"model_path", result.model_path.string()},
                     {"loss_path", result.loss_path.string()},
                     {"final_loss", report.epoch_loss.back()},
                     {"wall_clock_seconds", seconds}};
    outputs.write(result.manifest_path, manifest.dump(2) + "\n");
  } catch (...) {
    outputs.rollback();
    throw;
  }
  logger()->info("final epoch loss {:.6g}; model written to {}", report.epoch_loss.back(),
                 result.model_path.string());
  result.report = std::move(report);
  return result;
}

EvaluateResult cmd_evaluate(const EvaluateOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const SavedModel model = load_model(opts.model);
  const Variable model_variable = parse_variable(model.variable);
  if (opts.variable && *opts.variable != model_variable) {
    throw DataError("model was trained on " + model.variable + " but evaluation requested " +
                    std::string(to_string(*opts.variable)));
  }
  const auto data = load_series(opts.data, model_variable);
  const YearMonth first_target{opts.cutoff_year + 1, 1};
  if (data.empty() || first_target > data.last_month()) {
    throw DataError("no observations after " + std::to_string(opts.cutoff_year) + " to evaluate");
  }

  EvaluateResult result;
  result.pairs = one_step_predictions(model, data, first_target);
  const std::string unit(units(model_variable));
  result.summary = summarize(result.pairs, unit);

  ensure_dir(opts.out_dir);
  result.predictions_path = opts.out_dir / kPredictionsFile;
  result.summary_path = opts.out_dir / kSummaryFile;

  std::ostringstream csv;
  csv << "# variable=" << model.variable << "; units=" << unit
      << "; error=predicted-actual; mode=one-step-ahead from actual history\n";
  csv << "year,month,actual,predicted,error\n";
  for (const auto& p : result.pairs) {
    csv << p.target_month.year << ',' << p.target_month.month << ',' << fmt_double(p.actual) << ','
        << fmt_double(p.predicted) << ',' << fmt_double(p.error()) << '\n';
  }

  const auto& s = result.summary;
  json summary = {{"variable", model.variable},
                  {"units", unit},
                  {"sign_convention", "error = predicted - actual"},
                  {"std_convention", "population standard deviation (divide by n)"},
                  {"n", s.n},
                  {"first_target", result.pairs.front().target_month.to_string()},
                  {"last_target", result.pairs.back().target_month.to_string()},
                  {"mean_error", s.mean_error},
                  {"std_error", s.std_error},
                  {"mean_abs_error", s.mean_abs_error},
                  {"std_abs_error", s.std_abs_error}};
  if (s.n >= 2) {
    summary["std_error_sample"] = sample_std(s.std_error, s.n);
    summary["std_abs_error_sample"] = sample_std(s.std_abs_error, s.n);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json manifest = {{"tool_version", kToolVersion},
                   {"command", "evaluate"},
                   {"variable", model.variable},
                   {"dataset", {{"path", opts.data.string()}, {"rows", data.size()}}},
                   {"model_path", opts.model.string()},
                   {"cutoff_year", opts.cutoff_year},
                   {"window", model.window},
                   {"hidden_dim", model.parameters.hidden_dim()},
                   {"wall_clock_seconds", seconds}};

  OutputSet outputs;
  try {
    outputs.write(result.predictions_path, csv.str());
    outputs.write(result.summary_path, summary.dump(2) + "\n");
    outputs.write(opts.out_dir / kEvaluateManifest, manifest.dump(2) + "\n");
  } catch (...) {
    outputs.rollback();
    throw;
  }
  logger()->info("{} predictions; mean error {:.4g} {}, mean |error| {:.4g} {}", s.n, s.mean_error,
                 unit, s.mean_abs_error, unit);
  return result;
}

std::string cmd_predict(const PredictOptions& opts, std::ostream& out) {
  if (opts.horizon < 1) throw PreconditionError("--horizon must be >= 1");
  const SavedModel model = load_model(opts.model);
  const Variable variable = parse_variable(model.variable);
  const auto data = load_series(opts.data, variable);
  const auto points = rollout_forecast(model, data, static_cast<std::size_t>(opts.horizon));

  std::ostringstream csv;
  csv << "# variable=" << model.variable << "; units=" << units(variable)
      << "; mode=rollout (each prediction is fed back as input); origin="
      << data.last_month().to_string() << '\n';
  csv << "year,month,predicted\n";
  for (const auto& p : points) {
    csv << p.month.year << ',' << p.month.month << ',' << fmt_double(p.predicted) << '\n';
  }
  const std::string text = csv.str();
  if (opts.out_dir) {
    ensure_dir(*opts.out_dir);
    write_file_atomically(*opts.out_dir / kRolloutFile, text);
  } else {
    out << text;
  }
  return text;
}

namespace {

// Bare keys in a config file belong to `train`; a [train] section works too.
class TrainDefaultsFormat : public CLI::ConfigINI {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {"train"};
    }
    return items;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"seqcast: LSTM forecasting of monthly temperature and rainfall"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  TrainOptions train_opts;
  std::string train_variable;
  bool no_clip = false;
  auto* train_cmd = app.add_subcommand("train", "Train a model for one variable");
  // CLI11 only reads config files attached to the top-level app; train
  // falls through so `seqcast train --config f.ini` still reaches it.
  app.set_config("--config", "", "key=value file supplying train defaults");
  app.config_formatter(std::make_shared<TrainDefaultsFormat>());
  app.allow_config_extras(CLI::config_extras_mode::error);
  train_cmd->fallthrough();
  train_cmd->add_option("--data", train_opts.data, "Monthly weather CSV")->required();
  train_cmd->add_option("--variable", train_variable, "temperature or rainfall")->required();
  train_cmd->add_option("--out", train_opts.out_dir, "Output directory")->required();
  train_cmd->add_option("--window", train_opts.config.window, "Input window in months")
      ->capture_default_str();
  train_cmd->add_option("--hidden", train_opts.config.hidden_dim, "LSTM hidden units")
      ->capture_default_str();
  train_cmd->add_option("--lr", train_opts.config.learning_rate, "Adam learning rate")
      ->capture_default_str();
  train_cmd->add_option("--epochs", train_opts.config.epochs, "Training epochs")
      ->capture_default_str();
  train_cmd->add_option("--seed", train_opts.config.seed, "Initialization/shuffle seed")
      ->capture_default_str();
  train_cmd->add_option("--cutoff", train_opts.cutoff_year, "Last training year")
      ->capture_default_str();
  train_cmd->add_option("--clip", train_opts.config.clip_norm, "Global gradient-norm clip")
      ->capture_default_str();
  train_cmd->add_flag("--shuffle", train_opts.config.shuffle, "Shuffle samples each epoch");
  train_cmd->add_flag("--no-clip", no_clip, "Disable gradient clipping");

  EvaluateOptions eval_opts;
  std::string eval_variable;
  auto* eval_cmd = app.add_subcommand("evaluate", "One-step evaluation on the test years");
  eval_cmd->add_option("--model", eval_opts.model, "Model file")->required();
  eval_cmd->add_option("--data", eval_opts.data, "Monthly weather CSV")->required();
  eval_cmd->add_option("--out", eval_opts.out_dir, "Output directory")->required();
  eval_cmd->add_option("--variable", eval_variable, "Expected variable (checked against model)");
  eval_cmd->add_option("--cutoff", eval_opts.cutoff_year, "Last training year")
      ->capture_default_str();

  PredictOptions pred_opts;
  std::string pred_out;
  auto* pred_cmd = app.add_subcommand("predict", "Rollout forecast past the last observation");
  pred_cmd->add_option("--model", pred_opts.model, "Model file")->required();
  pred_cmd->add_option("--data", pred_opts.data, "Monthly weather CSV")->required();
  pred_cmd->add_option("--horizon", pred_opts.horizon, "Months to forecast")->required();
  pred_cmd->add_option("--out", pred_out, "Output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*train_cmd) {
      train_opts.variable = parse_variable(train_variable);
      if (no_clip) train_opts.config.clip_norm = 0.0;
      cmd_train(train_opts);
    } else if (*eval_cmd) {
      if (!eval_variable.empty()) eval_opts.variable = parse_variable(eval_variable);
      cmd_evaluate(eval_opts);
    } else if (*pred_cmd) {
      if (!pred_out.empty()) pred_opts.out_dir = fs::path(pred_out);
      cmd_predict(pred_opts, out);
    }
  } catch (const PreconditionError& e) {
    err << "seqcast: " << e.what() << '\n';
    return kUsageError;
  } catch (const DivergenceError& e) {
    err << "seqcast: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "seqcast: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace seqcast::cli
