// Latent transition dynamics: one-step prediction by binding, multi-step
// rollouts in embedding space and phase space, codebook cleanup, noise
// injection, and similarity-kernel profiles.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/encoder.hpp"
#include "core/gridworld.hpp"
#include "core/hypervector.hpp"

namespace holo {

enum class Provenance { Clean, Noisy, Cleaned };

struct LatentState {
  ComplexHV hv;
  Provenance tag = Provenance::Clean;
};

struct CleanupPolicy {
  bool enabled = true;
  std::size_t period = 2;

  static CleanupPolicy disabled() { return {false, 0}; }
  static CleanupPolicy every(std::size_t period);
};

struct RolloutResult {
  std::vector<int> decoded_states;        // argmax decode after every step
  std::vector<double> similarity_to_truth;  // prediction vs ground-truth embedding
  bool final_correct = false;

  std::size_t steps_correct(std::span<const int> truth) const;
};

/// One latent transition: bind the current latent with the action vector.
LatentState predict_next(const LatentState& z, const ComplexHV& action_hv);

/// Iterated binding; the k-th output is z0 bound with the product of the
/// first k action vectors. Throws on an empty action list.
std::vector<LatentState> rollout_embedding(const LatentState& z0,
                                           std::span<const ComplexHV> actions);

/// Multi-step rollout computed as a single modular phase sum: one pass of
/// addition, one canonicalization at the end, independent of the horizon.
PhaseVector rollout_phase(const PhaseVector& theta0,
                          std::span<const PhaseVector> action_phases);

/// Nearest codebook entry by similarity. Ties within 1e-12 resolve to the
/// lowest state index. Returns the index and the exact codebook row.
std::pair<int, LatentState> cleanup(const LatentState& z, const Codebook& cb);

/// Latent rollout that snaps to the cleaned codebook row after every
/// policy.period steps (when enabled). Decodes are recorded every step.
/// truth_states holds the ground-truth state after each step (length equals
/// the number of actions) and is used for similarities and final_correct.
RolloutResult rollout_with_cleanup(const LatentState& z0, std::span<const ComplexHV> actions,
                                   const Codebook& cb, const CleanupPolicy& policy,
                                   std::span<const int> truth_states);

/// Add i.i.d. N(0, sigma) to every real and imaginary component.
LatentState add_noise(const LatentState& z, double sigma, std::uint64_t seed);

/// Similarity of state s to the state k steps along action a (inverse action
/// for negative k), for k in [k_min, k_max]. Offsets that leave the grid are
/// omitted rather than clamped.
std::vector<std::pair<int, double>> similarity_profile(const StateEncoder& enc_s, int s,
                                                       int a, int k_min, int k_max,
                                                       const GridSpec& g);

}  // namespace holo
