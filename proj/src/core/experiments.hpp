// Experiment orchestration: model training/loading across backends, metric
// computation (one-step, rollouts, noise robustness, kernel profiles),
// benchmark timing, and artifact serialization (metrics JSON, figure CSVs,
// checkpoints, run manifest).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/config.hpp"
#include "core/dynamics.hpp"
#include "core/encoder.hpp"
#include "core/gridworld.hpp"
#include "core/hrr_model.hpp"
#include "core/mlp.hpp"
#include "core/training.hpp"

namespace holo {

struct FhrrRun {
  EncoderPair enc;
  Codebook cb;
  LossReport losses;
};

struct MlpRun {
  MlpModel model;
  std::vector<double> mse;
};

struct HrrRun {
  HrrModel model;
};

/// A trained (or constructed) model plus the grid and dataset split it was
/// fit on. `kind` is one of fhrr | hrr | mlp-s | mlp-m | mlp-l.
struct TrainedModel {
  std::string kind;
  GridSpec grid;
  DatasetSplit split;
  std::uint64_t seed = 0;
  std::uint64_t epochs = 0;
  std::variant<FhrrRun, MlpRun, HrrRun> backend;
};

bool is_mlp_kind(const std::string& kind);
MlpVariant mlp_variant_for_kind(const std::string& kind);
std::string kind_for_mlp_config(const MlpConfig& cfg);

/// Train one model of the given kind at the given holdout ratio and seed,
/// using the grid, dimension, epochs, and optimizer settings from the config.
TrainedModel train_model(const RunConfig& cfg, const std::string& kind,
                         double holdout_ratio, std::uint64_t seed);

/// Shorthand: cfg.model at cfg.zero_shot_ratio.
TrainedModel train_model(const RunConfig& cfg, std::uint64_t seed);

/// Load a checkpoint (format detected from the file header) and rebuild the
/// split it was trained on from the sidecar seed and the config's ratio.
TrainedModel load_model(const RunConfig& cfg, const std::string& path);

std::uint64_t model_parameter_count(const TrainedModel& m);

struct PredictOutcome {
  int decoded = -1;
  double cosine = 0.0;  // prediction vs the true next-state embedding
};

/// One-step prediction and decode for any backend.
PredictOutcome predict_decode(const TrainedModel& m, int s, int a);

struct OneStepMetrics {
  double accuracy = 0.0;    // fraction of transitions decoded correctly
  double cosine_x100 = 0.0; // mean cosine similarity, scaled by 100
  std::size_t count = 0;
};

/// Decoded accuracy and mean cosine over a transition set. Throws on an
/// empty set.
OneStepMetrics one_step_metrics(const TrainedModel& m, std::span<const Transition> ts);

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t horizon = 0;
  std::size_t cleanup_period = 0;  // 0 = cleanup disabled
  bool final_correct = false;
  std::size_t steps_correct = 0;
};

struct RolloutSummary {
  double final_accuracy = 0.0;
  double mean_steps_correct = 0.0;
  std::size_t trials = 0;
};

/// Monte-Carlo rollout accuracy over n_trials random trajectories. Trial t
/// draws its trajectory from a stream derived from (seed, horizon, t), so
/// every model evaluated at the same seed sees identical trials and results
/// do not depend on the evaluation thread count. Not defined for hrr.
RolloutSummary rollout_accuracy(const TrainedModel& m, std::size_t horizon,
                                const CleanupPolicy& policy, std::size_t n_trials,
                                std::uint64_t seed,
                                std::vector<TrialRecord>* records = nullptr);

/// One-step accuracy when N(0, sigma) is injected into the predicted latent
/// before decoding. Transition i uses its own stream derived from (seed, i).
double noisy_one_step_accuracy(const TrainedModel& m, std::span<const Transition> ts,
                               double sigma, std::uint64_t seed);

/// Mean similarity-kernel curve for one action, averaged over base states.
/// Offsets that fall outside the grid for a given base state are skipped, so
/// each k records how many states contributed.
struct KernelCurve {
  int action = 0;
  std::vector<int> ks;
  std::vector<double> mean_similarity;
  std::vector<int> n_states;
};

std::vector<KernelCurve> kernel_profiles(const EncoderPair& enc, const GridSpec& g,
                                         std::span<const int> states, int k_min,
                                         int k_max);

/// The ten central base states used for kernel profile reports (rows 4-5,
/// columns 3-7 on the default grid).
std::vector<int> default_profile_states(const GridSpec& g);

/// Run one CLI command end to end, writing metrics.json, run_manifest.json,
/// and the command's CSVs/checkpoints into cfg.out_dir. Commands: train,
/// eval, rollout, sweep-zeroshot, sweep-noise, kernel, export, bench,
/// repro-table1. Throws on unknown commands, invalid configs, and I/O
/// failures.
void run_command(const RunConfig& cfg, const std::string& command);

}  // namespace holo
