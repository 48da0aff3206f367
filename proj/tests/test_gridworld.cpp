#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "core/gridworld.hpp"

using namespace holo;

TEST_CASE("2x2 grid: full hand-written transition table") {
  const GridSpec g{2, 2};
  // States: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1). Actions: 0 up, 1 down, 2 left,
  // 3 right; off-grid moves stay in place.
  const int expect[4][4] = {
      // up, down, left, right
      {0, 2, 0, 1},  // from 0
      {1, 3, 0, 1},  // from 1
      {0, 2, 2, 3},  // from 2
      {1, 3, 2, 3},  // from 3
  };
  for (int s = 0; s < 4; ++s) {
    for (int a = 0; a < 4; ++a) CHECK(step(g, s, a) == expect[s][a]);
  }
}

TEST_CASE("10x10 grid: interior moves and boundary clamping") {
  const GridSpec g{10, 10};
  CHECK(g.n_states() == 100);
  CHECK(GridSpec::n_actions() == 4);
  // Interior state (4,7) = 47.
  CHECK(step(g, 47, kUp) == 37);
  CHECK(step(g, 47, kDown) == 57);
  CHECK(step(g, 47, kLeft) == 46);
  CHECK(step(g, 47, kRight) == 48);
  // Corners clamp.
  CHECK(step(g, 0, kUp) == 0);
  CHECK(step(g, 0, kLeft) == 0);
  CHECK(step(g, 9, kUp) == 9);
  CHECK(step(g, 9, kRight) == 9);
  CHECK(step(g, 90, kDown) == 90);
  CHECK(step(g, 90, kLeft) == 90);
  CHECK(step(g, 99, kDown) == 99);
  CHECK(step(g, 99, kRight) == 99);
  // Edges clamp only on their own axis.
  CHECK(step(g, 5, kUp) == 5);
  CHECK(step(g, 5, kDown) == 15);
  CHECK(step(g, 50, kLeft) == 50);
  CHECK(step(g, 50, kRight) == 51);

  CHECK_THROWS_AS(step(g, -1, kUp), std::invalid_argument);
  CHECK_THROWS_AS(step(g, 100, kUp), std::invalid_argument);
  CHECK_THROWS_AS(step(g, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(step(g, 0, -1), std::invalid_argument);
}

TEST_CASE("enumerate_transitions is exhaustive and lexicographic") {
  const GridSpec g{10, 10};
  const std::vector<Transition> ts = enumerate_transitions(g);
  REQUIRE(ts.size() == 400);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const int s = static_cast<int>(i) / 4;
    const int a = static_cast<int>(i) % 4;
    CHECK(ts[i].s == s);
    CHECK(ts[i].a == a);
    CHECK(ts[i].s_next == step(g, s, a));
  }
}

TEST_CASE("zero_shot_split partitions exactly with round(ratio * N) held out") {
  const GridSpec g{10, 10};
  const std::vector<Transition> ts = enumerate_transitions(g);

  const DatasetSplit split = zero_shot_split(ts, 0.2, 7);
  CHECK(split.holdout.size() == 80);
  CHECK(split.train.size() == 320);
  CHECK(split.ratio == 0.2);
  CHECK(split.seed == 7);

  // Exact partition: every (s, a) appears exactly once across both parts.
  std::set<std::pair<int, int>> seen;
  for (const Transition& t : split.train) seen.insert({t.s, t.a});
  for (const Transition& t : split.holdout) seen.insert({t.s, t.a});
  CHECK(seen.size() == 400);

  // Deterministic per seed, different across seeds.
  const DatasetSplit again = zero_shot_split(ts, 0.2, 7);
  CHECK(std::equal(split.holdout.begin(), split.holdout.end(), again.holdout.begin(),
                   [](const Transition& x, const Transition& y) {
                     return x.s == y.s && x.a == y.a && x.s_next == y.s_next;
                   }));
  const DatasetSplit other = zero_shot_split(ts, 0.2, 8);
  const bool identical =
      std::equal(split.holdout.begin(), split.holdout.end(), other.holdout.begin(),
                 [](const Transition& x, const Transition& y) {
                   return x.s == y.s && x.a == y.a;
                 });
  CHECK_FALSE(identical);

  // Rounding and edge ratios.
  CHECK(zero_shot_split(ts, 0.0, 1).holdout.empty());
  CHECK(zero_shot_split(ts, 0.0, 1).train.size() == 400);
  CHECK(zero_shot_split(ts, 0.9, 1).holdout.size() == 360);
  CHECK(zero_shot_split(ts, 0.5001, 1).holdout.size() == 200);
  CHECK_THROWS_AS(zero_shot_split(ts, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(zero_shot_split(ts, -0.1, 1), std::invalid_argument);
}

TEST_CASE("inverse_action pairs opposite moves") {
  CHECK(inverse_action(kUp) == kDown);
  CHECK(inverse_action(kDown) == kUp);
  CHECK(inverse_action(kLeft) == kRight);
  CHECK(inverse_action(kRight) == kLeft);
  CHECK_THROWS_AS(inverse_action(4), std::invalid_argument);
  CHECK_THROWS_AS(inverse_action(-1), std::invalid_argument);
}

TEST_CASE("sample_trajectory follows the environment and is deterministic") {
  const GridSpec g{10, 10};
  const Trajectory t = sample_trajectory(g, 50, 123);
  REQUIRE(t.actions.size() == 50);
  REQUIRE(t.states.size() == 51);
  CHECK(t.states.front() == t.start);
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    CHECK(t.actions[i] >= 0);
    CHECK(t.actions[i] < 4);
    CHECK(t.states[i + 1] == step(g, t.states[i], t.actions[i]));
  }
  const Trajectory t2 = sample_trajectory(g, 50, 123);
  CHECK(t2.states == t.states);
  CHECK(t2.actions == t.actions);
  const Trajectory t3 = sample_trajectory(g, 50, 124);
  CHECK((t3.states != t.states || t3.actions != t.actions));
  CHECK_THROWS_AS(sample_trajectory(g, 0, 1), std::invalid_argument);
}
