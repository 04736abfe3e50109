#pragma once

// The seqcast command line: train / evaluate / predict. Each command is
// also callable directly; the command functions throw, `run` maps
// exceptions to exit codes.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "seqcast/dataset.hpp"
#include "seqcast/forecast.hpp"
#include "seqcast/metrics.hpp"
#include "seqcast/trainer.hpp"

namespace seqcast {

inline constexpr const char* kToolVersion = "1.0.0";

namespace cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2, kNumericError = 3 };

inline constexpr const char* kModelFile = "model.seqcast";
inline constexpr const char* kLossFile = "loss.csv";
inline constexpr const char* kTrainManifest = "manifest.json";
inline constexpr const char* kPredictionsFile = "predictions.csv";
inline constexpr const char* kSummaryFile = "summary.json";
inline constexpr const char* kEvaluateManifest = "evaluate_manifest.json";
inline constexpr const char* kRolloutFile = "rollout.csv";

struct TrainOptions {
  std::filesystem::path data;
  Variable variable = Variable::temperature;
  std::filesystem::path out_dir;
  TrainConfig config;
  int cutoff_year = 2013;
};

struct TrainResult {
  std::filesystem::path model_path;
  std::filesystem::path loss_path;
  std::filesystem::path manifest_path;
  TrainReport report;
};

/// load -> split -> normalize -> window -> train, then writes the model,
/// the loss curve and the run manifest into out_dir. On failure no output
/// file from this run is left behind.
TrainResult cmd_train(const TrainOptions& opts, const EpochCallback& on_epoch = {});

struct EvaluateOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  std::filesystem::path out_dir;
  std::optional<Variable> variable;  // must match the model's when given
  int cutoff_year = 2013;
};

struct EvaluateResult {
  std::vector<PredictionPair> pairs;
  ErrorSummary summary;
  std::filesystem::path predictions_path;
  std::filesystem::path summary_path;
};

/// One-step-ahead predictions for every month after cutoff_year.
EvaluateResult cmd_evaluate(const EvaluateOptions& opts);

struct PredictOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  int horizon = 0;
  std::optional<std::filesystem::path> out_dir;  // stdout when absent
};

/// Rollout forecast past the last observation; returns the CSV text that
/// was written.
std::string cmd_predict(const PredictOptions& opts, std::ostream& out);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace seqcast
