#include "core/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace holo {

int step(const GridSpec& g, int s, int a) {
  if (g.rows < 1 || g.cols < 1) throw std::invalid_argument("step: degenerate grid");
  if (s < 0 || s >= g.n_states()) throw std::invalid_argument("step: state out of range");
  int r = s / g.cols;
  int c = s % g.cols;
  switch (a) {
    case kUp: r = std::max(r - 1, 0); break;
    case kDown: r = std::min(r + 1, g.rows - 1); break;
    case kLeft: c = std::max(c - 1, 0); break;
    case kRight: c = std::min(c + 1, g.cols - 1); break;
    default: throw std::invalid_argument("step: action out of range");
  }
  return r * g.cols + c;
}

std::vector<Transition> enumerate_transitions(const GridSpec& g) {
  std::vector<Transition> out;
  out.reserve(static_cast<std::size_t>(g.n_states()) * GridSpec::n_actions());
  for (int s = 0; s < g.n_states(); ++s)
    for (int a = 0; a < GridSpec::n_actions(); ++a)
      out.push_back({s, a, step(g, s, a)});
  return out;
}

DatasetSplit zero_shot_split(const std::vector<Transition>& ts, double ratio,
                             std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio < 1.0))
    throw std::invalid_argument("zero_shot_split: ratio must lie in [0, 1)");
  const std::size_t n = ts.size();
  const std::size_t n_holdout =
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));

  // Partial Fisher-Yates over (s, a) indices: the first n_holdout slots of the
  // shuffled order are withheld.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(derive_seed(seed, "zero-shot-split"));
  for (std::size_t i = 0; i + 1 < n && i < n_holdout; ++i) {
    const std::size_t j = i + rng.uniform_int(n - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> held(n, false);
  for (std::size_t i = 0; i < n_holdout; ++i) held[order[i]] = true;

  DatasetSplit split;
  split.ratio = ratio;
  split.seed = seed;
  for (std::size_t i = 0; i < n; ++i)
    (held[i] ? split.holdout : split.train).push_back(ts[i]);
  return split;
}

int inverse_action(int a) {
  switch (a) {
    case kUp: return kDown;
    case kDown: return kUp;
    case kLeft: return kRight;
    case kRight: return kLeft;
    default: throw std::invalid_argument("inverse_action: action out of range");
  }
}

Trajectory sample_trajectory(const GridSpec& g, std::size_t length, std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("sample_trajectory: length must be positive");
  Rng rng(seed);
  Trajectory t;
  t.start = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(g.n_states())));
  t.actions.resize(length);
  t.states.resize(length + 1);
  t.states[0] = t.start;
  for (std::size_t i = 0; i < length; ++i) {
    t.actions[i] = static_cast<int>(rng.uniform_int(GridSpec::n_actions()));
    t.states[i + 1] = step(g, t.states[i], t.actions[i]);
  }
  return t;
}

}  // namespace holo
