// End-to-end acceptance gate for the library. Trains the reference models at
// the default protocol, then checks accuracy, generalization, rollout,
// robustness, algebraic, and environment requirements. Prints exactly one
// [PASS]/[FAIL] line per criterion (16 total) with the measured values, and
// exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "core/config.hpp"
#include "core/dynamics.hpp"
#include "core/encoder.hpp"
#include "core/experiments.hpp"
#include "core/gridworld.hpp"
#include "core/hrr_model.hpp"
#include "core/hypervector.hpp"
#include "core/mlp.hpp"
#include "core/phase.hpp"
#include "core/rng.hpp"
#include "core/training.hpp"

namespace {

using namespace holo;

// --- pinned thresholds -------------------------------------------------
constexpr double kMinOneStepAccAll = 0.92;        // criterion 1
constexpr double kMinZeroShotAcc = 0.75;          // criterion 2
constexpr double kMinZeroShotCosX100 = 70.0;      // criterion 3
constexpr double kMaxMlpZeroShotAcc = 0.05;       // criterion 4
constexpr double kMinRolloutH5 = 0.60;            // criterion 5
constexpr double kMinRolloutH20 = 0.25;           // criterion 5
constexpr double kMinRolloutH20Cleanup = 0.50;    // criterion 5
constexpr double kMinRolloutH100Cleanup = 0.25;   // criterion 5
constexpr double kMinH20Margin = 0.25;            // criterion 6
constexpr double kNoiseSigma = 5.0;               // criterion 7
constexpr double kMinNoisyAcc = 0.80;             // criterion 7
constexpr double kMinNoisyMargin = 0.30;          // criterion 7
constexpr double kSparseRatio = 0.9;              // criterion 8
constexpr double kMinSparseFactor = 3.0;          // criterion 8
constexpr double kAlgebraTol = 1e-9;              // criterion 10
constexpr double kGradTol = 1e-4;                 // criterion 11
constexpr double kRffAbsTol = 0.05;               // criterion 12
constexpr double kRffRatioLo = 0.25;              // criterion 12
constexpr double kRffRatioHi = 0.75;              // criterion 12
constexpr double kAgreementTol = 1e-9;            // criterion 13

constexpr std::uint64_t kExpectedPhaseParams = 53248;   // criterion 9
constexpr std::uint64_t kExpectedMlpSParams = 41600;    // criterion 9
constexpr std::uint64_t kExpectedMlpMParams = 241024;   // criterion 9
constexpr std::uint64_t kExpectedMlpLParams = 1394048;  // criterion 9

std::string fmt(const char* f, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Reporter {
  int n_fail = 0;
  void line(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++n_fail;
  }
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<TrainedModel> train_fleet(const RunConfig& cfg, const std::string& kind,
                                      double ratio) {
  std::vector<TrainedModel> out;
  out.reserve(cfg.seeds.size());
  for (std::uint64_t s : cfg.seeds) {
    auto t0 = std::chrono::steady_clock::now();
    out.push_back(train_model(cfg, kind, ratio, s));
    std::fprintf(stderr, "[setup] %s seed %llu ratio %.1f trained in %.1fs\n", kind.c_str(),
                 static_cast<unsigned long long>(s), ratio, elapsed_s(t0));
  }
  return out;
}

template <typename F>
double mean_over(const std::vector<TrainedModel>& ms, F&& f) {
  double sum = 0.0;
  for (const auto& m : ms) sum += f(m);
  return sum / static_cast<double>(ms.size());
}

// --- criterion 10: algebra suite ---------------------------------------

struct AlgebraResult {
  double worst_assoc = 0.0;
  double worst_comm = 0.0;
  double worst_inverse = 0.0;
  double worst_unit = 0.0;
  double worst_periodic = 0.0;
  bool ok(double tol) const {
    return worst_assoc <= tol && worst_comm <= tol && worst_inverse <= tol &&
           worst_unit <= tol && worst_periodic <= tol;
  }
};

double max_phase_gap(const PhaseVector& a, const PhaseVector& b) {
  double worst = 0.0;
  for (std::size_t d = 0; d < a.dim(); ++d)
    worst = std::max(worst, std::abs(phase_distance(a.phases[d], b.phases[d])));
  return worst;
}

AlgebraResult run_algebra_suite() {
  AlgebraResult r;
  constexpr std::size_t kDim = 64;
  constexpr int kCases = 100;

  for (int i = 0; i < kCases; ++i) {
    auto a = random_phase_vector(kDim, PhaseDist::Uniform, derive_seed(100, "alg-a", i));
    auto b = random_phase_vector(kDim, PhaseDist::Uniform, derive_seed(100, "alg-b", i));
    auto c = random_phase_vector(kDim, PhaseDist::Uniform, derive_seed(100, "alg-c", i));

    r.worst_assoc = std::max(r.worst_assoc, max_phase_gap(bind(bind(a, b), c), bind(a, bind(b, c))));
    r.worst_comm = std::max(r.worst_comm, max_phase_gap(bind(a, b), bind(b, a)));
    r.worst_inverse =
        std::max(r.worst_inverse, max_phase_gap(bind(a, inverse(a)), identity_phase_vector(kDim)));

    // Unit modulus must survive conversion and complex-domain binding.
    auto ca = to_complex(a);
    auto prod = complex_multiply(ca, to_complex(b));
    for (std::size_t d = 0; d < kDim; ++d) {
      double ma = ca.re[d] * ca.re[d] + ca.im[d] * ca.im[d];
      double mp = prod.re[d] * prod.re[d] + prod.im[d] * prod.im[d];
      r.worst_unit = std::max({r.worst_unit, std::abs(ma - 1.0), std::abs(mp - 1.0)});
    }
  }

  // Loss invariance under 2*pi parameter shifts.
  const GridSpec g3{3, 3};
  const auto batch = enumerate_transitions(g3);
  const auto pairs = inverse_action_pairs();
  const auto states = distinct_states(batch);
  const EncoderPair base = new_encoders(8, 9, 4, 77);
  const double bind0 = binding_loss(base.state, base.action, batch, nullptr);
  const double inv0 = invertibility_loss(base.action, pairs, nullptr);
  const double ortho0 = orthogonality_loss(base.state, states, nullptr);

  Rng rng(derive_seed(100, "alg-periodic"));
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  for (int i = 0; i < kCases; ++i) {
    EncoderPair enc = base;
    Mat& table = (rng.uniform_int(2) == 0) ? enc.state.theta : enc.action.theta;
    std::size_t idx = rng.uniform_int(table.data.size());
    int k = 1 + static_cast<int>(rng.uniform_int(3));
    if (rng.uniform_int(2) == 0) k = -k;
    table.data[idx] += static_cast<double>(k) * kTwoPi;

    double db = std::abs(binding_loss(enc.state, enc.action, batch, nullptr) - bind0);
    double di = std::abs(invertibility_loss(enc.action, pairs, nullptr) - inv0);
    double dr = std::abs(orthogonality_loss(enc.state, states, nullptr) - ortho0);
    r.worst_periodic = std::max({r.worst_periodic, db, di, dr});
  }
  return r;
}

// --- criterion 12: random-feature kernel fidelity ----------------------

double rff_mean_abs_error(std::size_t d_out, std::uint64_t seed) {
  constexpr std::size_t kDIn = 3;
  constexpr int kPairs = 100;
  Mat proj(d_out, kDIn);
  Rng prng(derive_seed(seed, "rff-proj", d_out));
  for (double& v : proj.data) v = prng.normal();

  Rng xrng(derive_seed(seed, "rff-pairs"));  // same pairs at every width
  double err = 0.0;
  for (int i = 0; i < kPairs; ++i) {
    std::vector<double> x(kDIn), y(kDIn);
    for (double& v : x) v = xrng.uniform(-1.0, 1.0);
    for (double& v : y) v = xrng.uniform(-1.0, 1.0);
    double d2 = 0.0;
    for (std::size_t k = 0; k < kDIn; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
    double sim = similarity(phase_encode(x, proj), phase_encode(y, proj));
    err += std::abs(sim - std::exp(-0.5 * d2));
  }
  return err / kPairs;
}

// --- criterion 14: cleanup behavior ------------------------------------

double cleanup_error_rate(std::size_t dim, double sigma_phase, int n_trials,
                          std::uint64_t seed) {
  EncoderPair enc = new_encoders(dim, 100, 4, seed);
  Codebook cb = build_codebook(enc);
  Rng rng(derive_seed(seed, "accept-cleanup", dim));
  int errors = 0;
  for (int t = 0; t < n_trials; ++t) {
    int s = static_cast<int>(rng.uniform_int(100));
    PhaseVector pv = encode_state_phases(enc.state, static_cast<std::size_t>(s));
    for (double& p : pv.phases) p += rng.normal(0.0, sigma_phase);
    canonicalize(pv.phases);
    LatentState z{to_complex(pv), Provenance::Noisy};
    if (cleanup(z, cb).first != s) ++errors;
  }
  return static_cast<double>(errors) / n_trials;
}

}  // namespace

int main() {
  const auto t_start = std::chrono::steady_clock::now();
  Reporter rep;

  RunConfig cfg;  // default protocol: dim 512, 10x10, ratio 0.2, 500 epochs
  const GridSpec grid{cfg.grid_rows, cfg.grid_cols};
  const auto all = enumerate_transitions(grid);

  std::fprintf(stderr, "[setup] training %zu fhrr + %zu mlp-m models at ratio %.1f\n",
               cfg.seeds.size(), cfg.seeds.size(), cfg.zero_shot_ratio);
  const auto fhrr = train_fleet(cfg, "fhrr", cfg.zero_shot_ratio);
  const auto mlpm = train_fleet(cfg, "mlp-m", cfg.zero_shot_ratio);

  // --- criteria 1-3: one-step accuracy and cosine quality ---------------
  const double acc_all =
      mean_over(fhrr, [&](const TrainedModel& m) { return one_step_metrics(m, all).accuracy; });
  const double acc_zs = mean_over(
      fhrr, [](const TrainedModel& m) { return one_step_metrics(m, m.split.holdout).accuracy; });
  const double cos_zs = mean_over(fhrr, [](const TrainedModel& m) {
    return one_step_metrics(m, m.split.holdout).cosine_x100;
  });
  rep.line(1, acc_all >= kMinOneStepAccAll,
           fmt("fhrr one-step accuracy on all %zu transitions = %.4f (min %.2f)", all.size(),
               acc_all, kMinOneStepAccAll));
  rep.line(2, acc_zs >= kMinZeroShotAcc,
           fmt("fhrr zero-shot accuracy on %zu held-out transitions = %.4f (min %.2f)",
               fhrr.front().split.holdout.size(), acc_zs, kMinZeroShotAcc));
  rep.line(3, cos_zs >= kMinZeroShotCosX100,
           fmt("fhrr zero-shot mean cosine x100 = %.2f (min %.1f)", cos_zs, kMinZeroShotCosX100));

  // --- criterion 4: MLP fails to generalize off the training set --------
  const double mlp_zs = mean_over(
      mlpm, [](const TrainedModel& m) { return one_step_metrics(m, m.split.holdout).accuracy; });
  rep.line(4, mlp_zs <= kMaxMlpZeroShotAcc,
           fmt("mlp-m zero-shot accuracy = %.4f (max %.2f)", mlp_zs, kMaxMlpZeroShotAcc));

  // --- criterion 5: compositional rollouts ------------------------------
  std::fprintf(stderr, "[eval] fhrr rollouts (%zu trials per horizon)\n", cfg.trials);
  const auto roll = [&](const TrainedModel& m, std::size_t h, const CleanupPolicy& p) {
    return rollout_accuracy(m, h, p, cfg.trials, m.seed).final_accuracy;
  };
  const auto off = CleanupPolicy::disabled();
  const auto on = CleanupPolicy::every(cfg.cleanup_period);
  const double f_h5 = mean_over(fhrr, [&](const TrainedModel& m) { return roll(m, 5, off); });
  const double f_h20 = mean_over(fhrr, [&](const TrainedModel& m) { return roll(m, 20, off); });
  const double f_h20c = mean_over(fhrr, [&](const TrainedModel& m) { return roll(m, 20, on); });
  const double f_h100c = mean_over(fhrr, [&](const TrainedModel& m) { return roll(m, 100, on); });
  const bool ok5 = f_h5 >= kMinRolloutH5 && f_h20 >= kMinRolloutH20 &&
                   f_h20c >= kMinRolloutH20Cleanup && f_h100c >= kMinRolloutH100Cleanup;
  rep.line(5, ok5,
           fmt("fhrr rollout accuracy h5=%.4f (min %.2f), h20=%.4f (min %.2f), "
               "h20+cleanup=%.4f (min %.2f), h100+cleanup=%.4f (min %.2f)",
               f_h5, kMinRolloutH5, f_h20, kMinRolloutH20, f_h20c, kMinRolloutH20Cleanup, f_h100c,
               kMinRolloutH100Cleanup));

  // --- criterion 6: rollout margin over the MLP -------------------------
  std::fprintf(stderr, "[eval] mlp-m rollouts\n");
  const double m_h20 = mean_over(mlpm, [&](const TrainedModel& m) { return roll(m, 20, off); });
  rep.line(6, f_h20 - m_h20 >= kMinH20Margin,
           fmt("h20 margin fhrr-mlp = %.4f - %.4f = %.4f (min %.2f)", f_h20, m_h20, f_h20 - m_h20,
               kMinH20Margin));

  // --- criterion 7: latent-noise robustness ------------------------------
  std::fprintf(stderr, "[eval] noise robustness at sigma=%.1f\n", kNoiseSigma);
  const double f_noise = mean_over(fhrr, [&](const TrainedModel& m) {
    return noisy_one_step_accuracy(m, all, kNoiseSigma, m.seed);
  });
  const double m_noise = mean_over(mlpm, [&](const TrainedModel& m) {
    return noisy_one_step_accuracy(m, all, kNoiseSigma, m.seed);
  });
  const bool ok7 = f_noise >= kMinNoisyAcc && (f_noise - m_noise) >= kMinNoisyMargin;
  rep.line(7, ok7,
           fmt("sigma=%.0f one-step accuracy fhrr=%.4f (min %.2f), mlp-m=%.4f, margin=%.4f "
               "(min %.2f)",
               kNoiseSigma, f_noise, kMinNoisyAcc, m_noise, f_noise - m_noise, kMinNoisyMargin));

  // --- criterion 8: sparse-data rollouts at ratio 0.9 --------------------
  std::fprintf(stderr, "[setup] retraining at ratio %.1f\n", kSparseRatio);
  const auto fhrr9 = train_fleet(cfg, "fhrr", kSparseRatio);
  const auto mlpm9 = train_fleet(cfg, "mlp-m", kSparseRatio);
  const double f9 = mean_over(fhrr9, [&](const TrainedModel& m) { return roll(m, 20, on); });
  const double m9 = mean_over(mlpm9, [&](const TrainedModel& m) { return roll(m, 20, on); });
  const bool ok8 = (m9 == 0.0) ? (f9 > 0.0) : (f9 >= kMinSparseFactor * m9);
  rep.line(8, ok8,
           fmt("ratio-%.1f h20+cleanup accuracy fhrr=%.4f, mlp-m=%.4f, factor=%s (min %.1fx)",
               kSparseRatio, f9, m9,
               m9 == 0.0 ? "inf" : fmt("%.2f", f9 / m9).c_str(), kMinSparseFactor));

  // --- criterion 9: exact parameter counts --------------------------------
  const std::uint64_t fhrr_params = model_parameter_count(fhrr.front());
  const HrrModel hrr = hrr_init(cfg.dim, static_cast<std::size_t>(grid.n_states()),
                                static_cast<std::size_t>(GridSpec::n_actions()), 0);
  const std::uint64_t hrr_params = hrr_parameter_count(hrr);
  const auto n_s = static_cast<std::size_t>(grid.n_states());
  const auto n_a = static_cast<std::size_t>(GridSpec::n_actions());
  const std::uint64_t ps = mlp_parameter_count(MlpConfig::for_variant(MlpVariant::S), n_s, n_a);
  const std::uint64_t pm = mlp_parameter_count(MlpConfig::for_variant(MlpVariant::M), n_s, n_a);
  const std::uint64_t pl = mlp_parameter_count(MlpConfig::for_variant(MlpVariant::L), n_s, n_a);
  const bool ok9 = fhrr_params == kExpectedPhaseParams && hrr_params == kExpectedPhaseParams &&
                   ps == kExpectedMlpSParams && pm == kExpectedMlpMParams &&
                   pl == kExpectedMlpLParams;
  rep.line(9, ok9,
           fmt("params fhrr=%llu hrr=%llu (want %llu), mlp s/m/l=%llu/%llu/%llu "
               "(want %llu/%llu/%llu)",
               static_cast<unsigned long long>(fhrr_params),
               static_cast<unsigned long long>(hrr_params),
               static_cast<unsigned long long>(kExpectedPhaseParams),
               static_cast<unsigned long long>(ps), static_cast<unsigned long long>(pm),
               static_cast<unsigned long long>(pl),
               static_cast<unsigned long long>(kExpectedMlpSParams),
               static_cast<unsigned long long>(kExpectedMlpMParams),
               static_cast<unsigned long long>(kExpectedMlpLParams)));

  // --- criterion 10: algebra suite ----------------------------------------
  const AlgebraResult alg = run_algebra_suite();
  rep.line(10, alg.ok(kAlgebraTol),
           fmt("algebra worst-case: assoc=%.2e comm=%.2e inverse=%.2e unit=%.2e "
               "loss-periodicity=%.2e (tol %.0e)",
               alg.worst_assoc, alg.worst_comm, alg.worst_inverse, alg.worst_unit,
               alg.worst_periodic, kAlgebraTol));

  // --- criterion 11: analytic gradients vs central differences ------------
  std::fprintf(stderr, "[eval] gradient checks\n");
  std::vector<Transition> grad_batch;
  for (std::size_t i = 0; i < all.size(); i += 16) grad_batch.push_back(all[i]);
  const EncoderPair genc = new_encoders(16, n_s, n_a, 7);
  const LossWeights probes[] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
                                {cfg.w_bind, cfg.w_inv, cfg.w_ortho}};
  double worst_grad = 0.0;
  std::uint64_t gseed = 11;
  for (const LossWeights& w : probes)
    worst_grad = std::max(worst_grad, gradient_check(genc, grad_batch, w, 60, 1e-5, gseed++));
  const GridSpec g3{3, 3};
  const auto batch3 = enumerate_transitions(g3);
  const MlpModel tiny = mlp_init(MlpConfig::custom(1, 8, 8, 4), 9, 4, 5);
  const double worst_mlp_grad = mlp_gradient_check(tiny, batch3, 60, 1e-5, 6);
  const bool ok11 = worst_grad < kGradTol && worst_mlp_grad < kGradTol;
  rep.line(11, ok11,
           fmt("gradient rel err: losses=%.2e (4 weightings x 60 probes), mlp=%.2e (60 probes) "
               "(tol %.0e)",
               worst_grad, worst_mlp_grad, kGradTol));

  // --- criterion 12: random-feature kernel fidelity -----------------------
  const double e1 = rff_mean_abs_error(10000, 12);
  const double e4 = rff_mean_abs_error(40000, 12);
  const double ratio = e4 / e1;
  const bool ok12 = e1 < kRffAbsTol && ratio >= kRffRatioLo && ratio <= kRffRatioHi;
  rep.line(12, ok12,
           fmt("rff vs rbf mean abs err: d=1e4 %.4f (max %.2f), d=4e4 %.4f, ratio %.3f "
               "(want [%.2f, %.2f])",
               e1, kRffAbsTol, e4, ratio, kRffRatioLo, kRffRatioHi));

  // --- criterion 13: phase-domain and embedding-domain rollouts agree -----
  const auto& run0 = std::get<FhrrRun>(fhrr.front().backend);
  double worst_agree = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Trajectory traj = sample_trajectory(grid, 100, derive_seed(13, "agreement", t));
    LatentState z0{encode_state(run0.enc.state, static_cast<std::size_t>(traj.start)),
                   Provenance::Clean};
    PhaseVector th0 = encode_state_phases(run0.enc.state, static_cast<std::size_t>(traj.start));
    std::vector<ComplexHV> acts;
    std::vector<PhaseVector> act_phases;
    for (int a : traj.actions) {
      acts.push_back(encode_action(run0.enc.action, static_cast<std::size_t>(a)));
      act_phases.push_back(encode_action_phases(run0.enc.action, static_cast<std::size_t>(a)));
    }
    const auto emb = rollout_embedding(z0, acts);
    const PhaseVector via_phase = rollout_phase(th0, act_phases);
    worst_agree = std::max(worst_agree, max_phase_gap(to_phases(emb.back().hv), via_phase));
  }
  rep.line(13, worst_agree < kAgreementTol,
           fmt("embedding vs phase rollouts, 100 trajectories x 100 steps: worst gap %.2e "
               "(tol %.0e)",
               worst_agree, kAgreementTol));

  // --- criterion 14: cleanup idempotence, dimension scaling, tie-breaks ---
  std::fprintf(stderr, "[eval] cleanup scaling\n");
  bool idem_ok = true;
  {
    const EncoderPair enc = new_encoders(256, 100, 4, 3);
    const Codebook cb = build_codebook(enc);
    for (int i = 0; i < 50 && idem_ok; ++i) {
      const auto s = static_cast<std::size_t>(i % 100);
      LatentState z = add_noise({encode_state(enc.state, s), Provenance::Clean}, 0.8,
                                derive_seed(3, "accept-idem", i));
      const auto first = cleanup(z, cb);
      const auto second = cleanup(first.second, cb);
      idem_ok = first.first == second.first && first.second.hv.re == second.second.hv.re &&
                first.second.hv.im == second.second.hv.im;
    }
  }
  const double err512 = cleanup_error_rate(512, 2.3, 4000, 31);
  const double err1024 = cleanup_error_rate(1024, 2.3, 4000, 31);
  const double err2048 = cleanup_error_rate(2048, 2.3, 4000, 31);
  const bool mono_ok = err512 > err1024 && err1024 > err2048;
  bool ties_ok = true;
  {
    EncoderPair enc;
    enc.state = StateEncoder(3, 4);
    enc.action = ActionEncoder(3, 4);
    const double row_a[3] = {0.5, -1.0, 2.0};
    const double row_b[3] = {2.0, 0.3, -0.7};
    for (int d = 0; d < 3; ++d) {
      enc.state.theta.at(0, d) = row_a[d];
      enc.state.theta.at(1, d) = row_b[d];
      enc.state.theta.at(2, d) = row_a[d];  // exact duplicate of row 0
      enc.state.theta.at(3, d) = 0.1 * d;
    }
    const Codebook cb = build_codebook(enc);
    const LatentState q{encode_state(enc.state, 2), Provenance::Clean};
    for (int rep_i = 0; rep_i < 20 && ties_ok; ++rep_i) ties_ok = cleanup(q, cb).first == 0;
  }
  const bool ok14 = idem_ok && mono_ok && ties_ok;
  rep.line(14, ok14,
           fmt("cleanup: idempotent=%s; err rate 512/1024/2048 = %.4f/%.4f/%.4f (strictly "
               "decreasing=%s); duplicate-row ties to lowest=%s",
               idem_ok ? "yes" : "no", err512, err1024, err2048, mono_ok ? "yes" : "no",
               ties_ok ? "yes" : "no"));

  // --- criterion 15: environment oracle and split partition ----------------
  bool env_ok = all.size() == 400;
  std::size_t idx = 0;
  for (int r = 0; r < grid.rows && env_ok; ++r) {
    for (int c = 0; c < grid.cols && env_ok; ++c) {
      for (int a = 0; a < 4 && env_ok; ++a, ++idx) {
        int rr = r;
        int cc = c;
        if (a == 0) {
          rr = (r > 0) ? r - 1 : r;
        } else if (a == 1) {
          rr = (r + 1 < grid.rows) ? r + 1 : r;
        } else if (a == 2) {
          cc = (c > 0) ? c - 1 : c;
        } else {
          cc = (c + 1 < grid.cols) ? c + 1 : c;
        }
        const Transition& t = all[idx];
        env_ok = t.s == r * grid.cols + c && t.a == a && t.s_next == rr * grid.cols + cc &&
                 step(grid, t.s, t.a) == t.s_next;
      }
    }
  }
  bool split_ok = true;
  for (std::uint64_t seed : cfg.seeds) {
    const DatasetSplit sp = zero_shot_split(all, cfg.zero_shot_ratio, seed);
    split_ok = split_ok && sp.train.size() == 320 && sp.holdout.size() == 80;
    std::vector<int> seen(all.size(), 0);
    for (const Transition& t : sp.train) seen[static_cast<std::size_t>(t.s * 4 + t.a)]++;
    for (const Transition& t : sp.holdout) seen[static_cast<std::size_t>(t.s * 4 + t.a)]++;
    for (int count : seen) split_ok = split_ok && count == 1;
    for (const Transition& t : sp.holdout) split_ok = split_ok && step(grid, t.s, t.a) == t.s_next;
  }
  rep.line(15, env_ok && split_ok,
           fmt("environment matches independent oracle on all 400 transitions=%s; splits "
               "partition exactly for %zu seeds=%s",
               env_ok ? "yes" : "no", cfg.seeds.size(), split_ok ? "yes" : "no"));

  // --- criterion 16: kernel profiles peak at zero offset -------------------
  bool peak_ok = true;
  double min_gap = 1e9;
  for (const TrainedModel& m : fhrr) {
    const auto& run = std::get<FhrrRun>(m.backend);
    const auto states = default_profile_states(grid);
    const auto curves = kernel_profiles(run.enc, grid, states, -4, 4);
    for (const KernelCurve& curve : curves) {
      double at_zero = 0.0;
      double best_other = -1e9;
      for (std::size_t i = 0; i < curve.ks.size(); ++i) {
        if (curve.n_states[i] == 0) continue;
        if (curve.ks[i] == 0) {
          at_zero = curve.mean_similarity[i];
        } else {
          best_other = std::max(best_other, curve.mean_similarity[i]);
        }
      }
      peak_ok = peak_ok && at_zero > best_other;
      min_gap = std::min(min_gap, at_zero - best_other);
    }
  }
  rep.line(16, peak_ok,
           fmt("kernel profiles maximal at k=0 for all 4 actions x %zu seeds=%s (min gap %.4f)",
               fhrr.size(), peak_ok ? "yes" : "no", min_gap));

  std::fprintf(stderr, "[done] total wall time %.1fs\n", elapsed_s(t_start));
  if (rep.n_fail == 0) {
    std::printf("acceptance: 16/16 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 16 criteria FAILED\n", rep.n_fail);
  return 1;
}
