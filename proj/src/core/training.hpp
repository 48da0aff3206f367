// Loss functions over the phase tables, their exact analytic gradients, the
// optimizer loop (Adam or SGD with global-norm clipping), and a
// finite-difference gradient checker.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/encoder.hpp"
#include "core/gridworld.hpp"

namespace holo {

struct LossWeights {
  double bind = 2.0;
  double inv = 0.5;
  double ortho = 0.05;
};

struct TrainConfig {
  std::size_t epochs = 500;
  double learning_rate = 0.007;
  double grad_clip = 1.0;
  std::size_t batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 0;
  bool use_sgd = false;        // default optimizer is Adam
};

struct LossRow {
  std::size_t epoch = 0;
  double bind = 0.0;
  double inv = 0.0;
  double ortho = 0.0;
  double total = 0.0;  // weighted sum
};
using LossReport = std::vector<LossRow>;

/// Gradients shaped like the encoder tables (symbol-major).
struct Gradients {
  Mat state;
  Mat action;
};

/// Mean over the batch of the squared complex distance between the encoded
/// next state and the bound (state, action) prediction. Unweighted gradients
/// are accumulated into *grads when non-null.
double binding_loss(const StateEncoder& enc_s, const ActionEncoder& enc_a,
                    std::span<const Transition> batch, Gradients* grads);

/// Sum over action pairs of the squared complex distance between the bound
/// pair and the identity vector. Pairs must each be (a, inverse_action(a)).
double invertibility_loss(const ActionEncoder& enc_a,
                          std::span<const std::pair<int, int>> pairs, Mat* grad_action);

/// Sum over unordered distinct state pairs of the squared similarity.
/// Fewer than two states mean no pairs: the empty sum is 0.
double orthogonality_loss(const StateEncoder& enc_s, std::span<const int> states,
                          Mat* grad_state);

struct TotalLoss {
  double bind = 0.0;
  double inv = 0.0;
  double ortho = 0.0;
  double total = 0.0;
};

/// Weighted combination of the three losses over one batch of transitions.
/// The invertibility term always covers both inverse pairs; the orthogonality
/// term covers the distinct states appearing in the batch. Weighted gradients
/// are accumulated into *grads when non-null.
TotalLoss total_loss(const EncoderPair& enc, std::span<const Transition> batch,
                     const LossWeights& weights, Gradients* grads);

/// The two unordered inverse pairs of the grid action set.
std::vector<std::pair<int, int>> inverse_action_pairs();

/// Sorted distinct states (sources and targets) appearing in a batch.
std::vector<int> distinct_states(std::span<const Transition> batch);

/// Adam accumulators for an arbitrary list of parameter tensors.
struct AdamState {
  std::vector<Mat> m;
  std::vector<Mat> v;
  std::uint64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void init(std::span<Mat* const> params);
};

/// Scale all gradients by max_norm / norm when the global norm exceeds it.
void clip_gradients(std::span<Mat* const> grads, double max_norm);

/// Global-norm clipping followed by one bias-corrected Adam update.
void adam_step(std::span<Mat* const> params, std::span<Mat* const> grads,
               AdamState& state, double lr, double grad_clip);

/// Global-norm clipping followed by one plain SGD update.
void sgd_step(std::span<Mat* const> params, std::span<Mat* const> grads, double lr,
              double grad_clip);

struct TrainResult {
  EncoderPair enc;
  LossReport report;
};

/// Fit fresh encoders to the train split. Deterministic per config seed.
/// Throws on an empty training set.
TrainResult train(const DatasetSplit& data, std::size_t dim, std::size_t n_states,
                  std::size_t n_actions, const TrainConfig& cfg, const LossWeights& weights);

/// Central finite differences versus analytic gradients of the weighted total
/// loss on n_probes randomly chosen parameters. Returns the worst relative
/// error; differences below 1e-8 in absolute value count as zero error.
double gradient_check(const EncoderPair& enc, std::span<const Transition> batch,
                      const LossWeights& weights, std::size_t n_probes, double h,
                      std::uint64_t seed);

}  // namespace holo
