#include "core/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "core/phase.hpp"
#include "core/rng.hpp"

namespace holo {

CleanupPolicy CleanupPolicy::every(std::size_t period) {
  if (period == 0) throw std::invalid_argument("CleanupPolicy: period must be positive");
  return {true, period};
}

std::size_t RolloutResult::steps_correct(std::span<const int> truth) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < decoded_states.size() && i < truth.size(); ++i)
    if (decoded_states[i] == truth[i]) ++n;
  return n;
}

LatentState predict_next(const LatentState& z, const ComplexHV& action_hv) {
  LatentState out;
  out.hv = complex_multiply(z.hv, action_hv);
  out.tag = z.tag;
  return out;
}

std::vector<LatentState> rollout_embedding(const LatentState& z0,
                                           std::span<const ComplexHV> actions) {
  if (actions.empty()) throw std::invalid_argument("rollout_embedding: empty action list");
  std::vector<LatentState> out;
  out.reserve(actions.size());
  LatentState z = z0;
  for (const ComplexHV& a : actions) {
    z = predict_next(z, a);
    out.push_back(z);
  }
  return out;
}

PhaseVector rollout_phase(const PhaseVector& theta0,
                          std::span<const PhaseVector> action_phases) {
  if (action_phases.empty()) throw std::invalid_argument("rollout_phase: empty action list");
  std::vector<double> acc = theta0.phases;
  for (const PhaseVector& p : action_phases) {
    if (p.dim() != acc.size())
      throw std::invalid_argument("rollout_phase: dimension mismatch");
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p.phases[i];
  }
  canonicalize(acc);
  PhaseVector out;
  out.phases = std::move(acc);  // already canonical; skip the constructor's pass
  return out;
}

std::pair<int, LatentState> cleanup(const LatentState& z, const Codebook& cb) {
  if (cb.n_states() == 0) throw std::invalid_argument("cleanup: empty codebook");
  if (z.hv.dim() != cb.dim) throw std::invalid_argument("cleanup: dimension mismatch");
  const double inv_d = 1.0 / static_cast<double>(cb.dim);
  int best = 0;
  double best_sim = -1e300;
  for (std::size_t s = 0; s < cb.n_states(); ++s) {
    const double* re = cb.re.row(s).data();
    const double* im = cb.im.row(s).data();
    double acc = 0.0;
    for (std::size_t k = 0; k < cb.dim; ++k) acc += z.hv.re[k] * re[k] + z.hv.im[k] * im[k];
    const double sim = acc * inv_d;
    if (sim > best_sim + 1e-12) {
      best_sim = sim;
      best = static_cast<int>(s);
    }
  }
  LatentState cleaned;
  cleaned.hv = cb.row(static_cast<std::size_t>(best));
  cleaned.tag = Provenance::Cleaned;
  return {best, cleaned};
}

RolloutResult rollout_with_cleanup(const LatentState& z0, std::span<const ComplexHV> actions,
                                   const Codebook& cb, const CleanupPolicy& policy,
                                   std::span<const int> truth_states) {
  if (actions.empty()) throw std::invalid_argument("rollout_with_cleanup: empty action list");
  if (policy.enabled && policy.period == 0)
    throw std::invalid_argument("rollout_with_cleanup: period must be positive");
  if (truth_states.size() != actions.size())
    throw std::invalid_argument("rollout_with_cleanup: truth length must match horizon");

  RolloutResult out;
  out.decoded_states.reserve(actions.size());
  out.similarity_to_truth.reserve(actions.size());
  LatentState z = z0;
  for (std::size_t t = 0; t < actions.size(); ++t) {
    z = predict_next(z, actions[t]);
    const auto [decoded, cleaned] = cleanup(z, cb);
    out.decoded_states.push_back(decoded);
    out.similarity_to_truth.push_back(
        similarity(z.hv, cb.row(static_cast<std::size_t>(truth_states[t]))));
    if (policy.enabled && (t + 1) % policy.period == 0) z = cleaned;
  }
  out.final_correct = out.decoded_states.back() == truth_states.back();
  return out;
}

LatentState add_noise(const LatentState& z, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be non-negative");
  LatentState out = z;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (double& x : out.hv.re) x += rng.normal(0.0, sigma);
  for (double& x : out.hv.im) x += rng.normal(0.0, sigma);
  out.hv.unitary = false;
  out.tag = Provenance::Noisy;
  return out;
}

std::vector<std::pair<int, double>> similarity_profile(const StateEncoder& enc_s, int s,
                                                       int a, int k_min, int k_max,
                                                       const GridSpec& g) {
  if (s < 0 || s >= g.n_states())
    throw std::invalid_argument("similarity_profile: state out of range");
  if (a < 0 || a >= GridSpec::n_actions())
    throw std::invalid_argument("similarity_profile: action out of range");
  if (k_min > k_max) throw std::invalid_argument("similarity_profile: empty k range");

  int dr = 0, dc = 0;
  switch (a) {
    case kUp: dr = -1; break;
    case kDown: dr = 1; break;
    case kLeft: dc = -1; break;
    case kRight: dc = 1; break;
  }
  const int r0 = s / g.cols;
  const int c0 = s % g.cols;
  const ComplexHV base = encode_state(enc_s, static_cast<std::size_t>(s));

  std::vector<std::pair<int, double>> out;
  for (int k = k_min; k <= k_max; ++k) {
    // k applications of action a as one straight-line offset; the inverse
    // action for negative k is the same offset with flipped sign.
    const int r = r0 + k * dr;
    const int c = c0 + k * dc;
    if (r < 0 || r >= g.rows || c < 0 || c >= g.cols) continue;
    const int target = r * g.cols + c;
    out.emplace_back(k, similarity(base, encode_state(enc_s, static_cast<std::size_t>(target))));
  }
  return out;
}

}  // namespace holo
