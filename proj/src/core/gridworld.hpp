// Deterministic bounded grid environment: transition enumeration, zero-shot
// dataset splits, and random trajectory sampling.
#pragma once

#include <cstdint>
#include <vector>

namespace holo {

/// Bounded rectangular grid. State index = row * cols + col.
struct GridSpec {
  int rows = 10;
  int cols = 10;

  int n_states() const { return rows * cols; }
  static constexpr int n_actions() { return 4; }
};

/// Action coding: 0 = up (row - 1), 1 = down (row + 1),
/// 2 = left (col - 1), 3 = right (col + 1).
enum Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

struct Transition {
  int s = 0;
  int a = 0;
  int s_next = 0;
};

/// Exhaustive (s, a) split: every transition lands in exactly one part.
struct DatasetSplit {
  std::vector<Transition> train;
  std::vector<Transition> holdout;
  double ratio = 0.0;
  std::uint64_t seed = 0;
};

/// One transition; moves that would exit the grid leave the state unchanged.
/// Throws on out-of-range state or action.
int step(const GridSpec& g, int s, int a);

/// All rows*cols*4 transitions in lexicographic (s, a) order.
std::vector<Transition> enumerate_transitions(const GridSpec& g);

/// Withhold round(ratio * N) transitions chosen uniformly over (s, a) pairs,
/// deterministic per seed. Throws unless 0 <= ratio < 1.
DatasetSplit zero_shot_split(const std::vector<Transition>& ts, double ratio,
                             std::uint64_t seed);

/// up <-> down, left <-> right.
int inverse_action(int a);

struct Trajectory {
  int start = 0;
  std::vector<int> actions;  // length = horizon
  std::vector<int> states;   // length = horizon + 1, states[0] == start
};

/// Uniform random start and i.i.d. uniform actions; states are the ground
/// truth rollout under step(). Throws on length == 0.
Trajectory sample_trajectory(const GridSpec& g, std::size_t length, std::uint64_t seed);

}  // namespace holo
