// HRR backend model: real-valued state/action tables whose binding is
// circular convolution. Used for parameter counting and inference
// benchmarking alongside the phase-based model.
#pragma once

#include <cstdint>
#include <vector>

#include "core/mat.hpp"

namespace holo {

struct HrrModel {
  std::size_t dim = 0;
  Mat state_table;   // n_states x dim, spectrum-normalized rows
  Mat action_table;  // n_actions x dim, spectrum-normalized rows

  std::size_t n_states() const { return state_table.rows; }
};

/// Random tables: rows sampled i.i.d. N(0, 1) then spectrum-normalized so
/// circular correlation inverts binding exactly.
HrrModel hrr_init(std::size_t dim, std::size_t n_states, std::size_t n_actions,
                  std::uint64_t seed);

/// Bound (state, action) prediction via circular convolution.
std::vector<double> hrr_predict(const HrrModel& m, int s, int a);

/// Argmax cosine against the state table; ties to lowest index.
int hrr_decode(const HrrModel& m, std::span<const double> predicted);

std::uint64_t hrr_parameter_count(const HrrModel& m);

}  // namespace holo
