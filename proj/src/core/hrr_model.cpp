#include "core/hrr_model.hpp"

#include <stdexcept>

#include "core/hypervector.hpp"
#include "core/rng.hpp"

namespace holo {

HrrModel hrr_init(std::size_t dim, std::size_t n_states, std::size_t n_actions,
                  std::uint64_t seed) {
  if (dim == 0 || n_states == 0 || n_actions == 0)
    throw std::invalid_argument("hrr_init: all dimensions must be positive");
  HrrModel m;
  m.dim = dim;
  m.state_table = Mat(n_states, dim);
  m.action_table = Mat(n_actions, dim);
  Rng rng(derive_seed(seed, "hrr-init"));
  std::vector<double> raw(dim);
  for (std::size_t s = 0; s < n_states; ++s) {
    for (double& v : raw) v = rng.normal();
    const auto normalized = hrr_normalize(raw);
    std::copy(normalized.begin(), normalized.end(), m.state_table.row(s).begin());
  }
  for (std::size_t a = 0; a < n_actions; ++a) {
    for (double& v : raw) v = rng.normal();
    const auto normalized = hrr_normalize(raw);
    std::copy(normalized.begin(), normalized.end(), m.action_table.row(a).begin());
  }
  return m;
}

std::vector<double> hrr_predict(const HrrModel& m, int s, int a) {
  if (s < 0 || static_cast<std::size_t>(s) >= m.state_table.rows)
    throw std::invalid_argument("hrr_predict: state out of range");
  if (a < 0 || static_cast<std::size_t>(a) >= m.action_table.rows)
    throw std::invalid_argument("hrr_predict: action out of range");
  const auto srow = m.state_table.row(static_cast<std::size_t>(s));
  const auto arow = m.action_table.row(static_cast<std::size_t>(a));
  return hrr_bind({srow.data(), srow.size()}, {arow.data(), arow.size()});
}

int hrr_decode(const HrrModel& m, std::span<const double> predicted) {
  if (predicted.size() != m.dim) throw std::invalid_argument("hrr_decode: size mismatch");
  int best = 0;
  double best_sim = -1e300;
  for (std::size_t s = 0; s < m.state_table.rows; ++s) {
    const auto row = m.state_table.row(s);
    const double sim = cosine(predicted, {row.data(), row.size()});
    if (sim > best_sim + 1e-12) {
      best_sim = sim;
      best = static_cast<int>(s);
    }
  }
  return best;
}

std::uint64_t hrr_parameter_count(const HrrModel& m) {
  return static_cast<std::uint64_t>(m.dim) * (m.state_table.rows + m.action_table.rows);
}

}  // namespace holo
