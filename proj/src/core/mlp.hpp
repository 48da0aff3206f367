// Feed-forward baselines: learned state/action embedding tables feeding an
// MLP that predicts the next state embedding, trained with MSE against the
// model's own (jointly learned) embedding table.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/gridworld.hpp"
#include "core/mat.hpp"

namespace holo {

enum class MlpVariant { S, M, L };

struct MlpConfig {
  std::size_t state_dim = 64;
  std::size_t action_dim = 16;
  std::size_t hidden_layers = 4;
  std::size_t hidden_width = 256;
  MlpVariant variant = MlpVariant::M;

  /// S -> (2, 128); M -> (4, 256); L -> (6, 512).
  static MlpConfig for_variant(MlpVariant v);

  /// Arbitrary shape (used by the small gradient-check fixtures).
  static MlpConfig custom(std::size_t hidden_layers, std::size_t hidden_width,
                          std::size_t state_dim = 64, std::size_t action_dim = 16);
};

struct MlpModel {
  MlpConfig cfg;
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  Mat state_table;            // n_states x state_dim
  Mat action_table;           // n_actions x action_dim
  std::vector<Mat> weights;   // layer l: out x in
  std::vector<Mat> biases;    // layer l: 1 x out

  std::size_t n_layers() const { return weights.size(); }
};

struct MlpTrainConfig {
  std::size_t epochs = 500;
  double learning_rate = 0.0005;
  double grad_clip = 1.0;
  std::uint64_t seed = 0;
};

/// Learnable scalars across tables, weights, and biases.
std::uint64_t mlp_parameter_count(const MlpConfig& cfg, std::size_t n_states,
                                  std::size_t n_actions);

/// Embeddings uniform on (-1, 1); weights and biases uniform on
/// (-1/sqrt(fan_in), 1/sqrt(fan_in)). Deterministic per seed.
MlpModel mlp_init(const MlpConfig& cfg, std::size_t n_states, std::size_t n_actions,
                  std::uint64_t seed);

/// Predicted next-state embedding for a (state, action) index pair.
std::vector<double> mlp_forward(const MlpModel& m, int s, int a);

/// Forward pass from a raw current-state embedding (rollouts feed predictions
/// back through this path, bypassing the state table).
std::vector<double> mlp_forward_embedding(const MlpModel& m, std::span<const double> state_emb,
                                          int a);

/// Argmax cosine similarity against the state table; ties to lowest index.
int mlp_decode(const MlpModel& m, std::span<const double> predicted);

struct MlpTrainResult {
  MlpModel model;
  std::vector<double> mse;  // per-epoch training loss
};

/// Full-batch Adam on the train split. MSE sums over embedding dimensions and
/// averages over the batch; the target is the model's own state-table row of
/// the true next state. Throws on an empty training set.
MlpTrainResult mlp_train(const DatasetSplit& data, const MlpConfig& cfg,
                         std::size_t n_states, std::size_t n_actions,
                         const MlpTrainConfig& tcfg);

/// Latent rollout mirroring the FHRR cleanup protocol: raw predictions are
/// fed forward; cleanup steps snap to the nearest state-table row.
RolloutResult mlp_rollout(const MlpModel& m, int s0, std::span<const int> actions,
                          const CleanupPolicy& policy, std::span<const int> truth_states);

/// Noisy one-step decode used by the robustness sweep: N(0, sigma) is added
/// to every component of the predicted embedding before nearest-neighbor
/// decoding.
int mlp_decode_noisy(const MlpModel& m, int s, int a, double sigma, std::uint64_t seed);

/// Finite-difference check of the full training gradient (tables, weights,
/// biases) on n_probes random parameters; returns the worst relative error.
double mlp_gradient_check(const MlpModel& m, std::span<const Transition> batch,
                          std::size_t n_probes, double h, std::uint64_t seed);

/// Binary checkpoint: magic "HWMB", little-endian u32 {state_dim, action_dim,
/// hidden_layers, hidden_width, n_states, n_actions}, then the state table,
/// action table, and each layer's weights and bias as 64-bit floats,
/// row-major. JSON sidecar at path + ".json". Bit-exact round-trip.
void save_mlp(const std::string& path, const MlpModel& m, std::uint64_t seed,
              std::uint64_t epoch);
MlpModel load_mlp(const std::string& path);

}  // namespace holo
