#include "core/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/phase.hpp"
#include "core/rng.hpp"

namespace holo {
namespace {

// Per-epoch cosine/sine tables of both parameter tables. All loss and
// gradient arithmetic reduces to products of these entries, so each parameter
// is hit by trigonometry once per epoch instead of once per batch term.
struct TrigTables {
  Mat cs, ss;  // state table: n_s x D
  Mat ca, sa;  // action table: n_a x D

  TrigTables(const StateEncoder& s, const ActionEncoder& a)
      : cs(s.n_symbols, s.dim),
        ss(s.n_symbols, s.dim),
        ca(a.n_symbols, a.dim),
        sa(a.n_symbols, a.dim) {
    for (std::size_t i = 0; i < s.theta.data.size(); ++i) {
      cs.data[i] = std::cos(s.theta.data[i]);
      ss.data[i] = std::sin(s.theta.data[i]);
    }
    for (std::size_t i = 0; i < a.theta.data.size(); ++i) {
      ca.data[i] = std::cos(a.theta.data[i]);
      sa.data[i] = std::sin(a.theta.data[i]);
    }
  }
};

// Mean over the batch of sum_d |e^{i th_s'} - e^{i(th_s + th_a)}|^2
//   = mean_t sum_d 2 - 2 cos(delta),  delta = th_s' - th_s - th_a.
// d/d th_s' = (2/B) sin(delta); th_s and th_a get the negated term.
double binding_loss_impl(const TrigTables& t, std::span<const Transition> batch,
                         double grad_scale, Gradients* grads) {
  if (batch.empty()) throw std::invalid_argument("binding_loss: empty batch");
  const std::size_t d = t.cs.cols;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const Transition& tr : batch) {
    const double* csn = t.cs.row(tr.s_next).data();
    const double* ssn = t.ss.row(tr.s_next).data();
    const double* cst = t.cs.row(tr.s).data();
    const double* sst = t.ss.row(tr.s).data();
    const double* cat = t.ca.row(tr.a).data();
    const double* sat = t.sa.row(tr.a).data();
    double* gsn = grads ? grads->state.row(tr.s_next).data() : nullptr;
    double* gst = grads ? grads->state.row(tr.s).data() : nullptr;
    double* gat = grads ? grads->action.row(tr.a).data() : nullptr;
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      // cos/sin of (th_s + th_a) via angle-sum identities, then of delta.
      const double cpred = cst[k] * cat[k] - sst[k] * sat[k];
      const double spred = sst[k] * cat[k] + cst[k] * sat[k];
      const double cos_delta = csn[k] * cpred + ssn[k] * spred;
      acc += 2.0 - 2.0 * cos_delta;
      if (grads != nullptr) {
        const double sin_delta = ssn[k] * cpred - csn[k] * spred;
        const double g = grad_scale * 2.0 * inv_b * sin_delta;
        gsn[k] += g;
        gst[k] -= g;
        gat[k] -= g;
      }
    }
    loss += acc;
  }
  return loss * inv_b;
}

// Sum over pairs of sum_d |e^{i(th_a + th_a')} - 1|^2 = sum_d 2 - 2 cos(sig).
// d/d th_a = d/d th_a' = 2 sin(sig), sig = th_a + th_a'.
double invertibility_loss_impl(const TrigTables& t,
                               std::span<const std::pair<int, int>> pairs,
                               double grad_scale, Mat* grad_action) {
  if (pairs.empty()) throw std::invalid_argument("invertibility_loss: empty pair list");
  const std::size_t d = t.ca.cols;
  double loss = 0.0;
  for (const auto& [a, b] : pairs) {
    if (b != inverse_action(a))
      throw std::invalid_argument("invertibility_loss: pair is not (a, inverse(a))");
    const double* ca1 = t.ca.row(a).data();
    const double* sa1 = t.sa.row(a).data();
    const double* ca2 = t.ca.row(b).data();
    const double* sa2 = t.sa.row(b).data();
    double* g1 = grad_action ? grad_action->row(a).data() : nullptr;
    double* g2 = grad_action ? grad_action->row(b).data() : nullptr;
    for (std::size_t k = 0; k < d; ++k) {
      const double cos_sig = ca1[k] * ca2[k] - sa1[k] * sa2[k];
      loss += 2.0 - 2.0 * cos_sig;
      if (grad_action != nullptr) {
        const double sin_sig = sa1[k] * ca2[k] + ca1[k] * sa2[k];
        const double g = grad_scale * 2.0 * sin_sig;
        g1[k] += g;
        g2[k] += g;
      }
    }
  }
  return loss;
}

// L = sum_{i<j} sim_ij^2 with sim_ij = (1/D) sum_d cos(th_i,d - th_j,d).
// With C/S the cosine/sine rows of the participating states:
//   Sim = (C C^T + S S^T) / D (diagonal zeroed),
//   dL/dTheta = -(2/D) (S .* (Sim C) - C .* (Sim S)).
double orthogonality_loss_impl(const TrigTables& t, std::span<const int> states,
                               double grad_scale, Mat* grad_state) {
  if (states.size() < 2) return 0.0;  // no distinct pairs: the sum is empty
  const std::size_t k_states = states.size();
  const std::size_t d = t.cs.cols;
  Mat c(k_states, d), s(k_states, d);
  for (std::size_t i = 0; i < k_states; ++i) {
    std::copy(t.cs.row(states[i]).begin(), t.cs.row(states[i]).end(), c.row(i).begin());
    std::copy(t.ss.row(states[i]).begin(), t.ss.row(states[i]).end(), s.row(i).begin());
  }
  Mat sim_c, sim_s;
  gemm_nt(c, c, sim_c);
  gemm_nt(s, s, sim_s);
  Mat sim(k_states, k_states);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < sim.data.size(); ++i)
    sim.data[i] = (sim_c.data[i] + sim_s.data[i]) * inv_d;
  for (std::size_t i = 0; i < k_states; ++i) sim.at(i, i) = 0.0;

  double loss = 0.0;
  for (std::size_t i = 0; i < k_states; ++i)
    for (std::size_t j = i + 1; j < k_states; ++j) loss += sim.at(i, j) * sim.at(i, j);

  if (grad_state != nullptr) {
    Mat p, q;
    gemm_nn(sim, c, p);
    gemm_nn(sim, s, q);
    const double f = grad_scale * 2.0 * inv_d;
    for (std::size_t i = 0; i < k_states; ++i) {
      double* g = grad_state->row(states[i]).data();
      const double* ci = c.row(i).data();
      const double* si = s.row(i).data();
      const double* pi = p.row(i).data();
      const double* qi = q.row(i).data();
      for (std::size_t kk = 0; kk < d; ++kk) g[kk] -= f * (si[kk] * pi[kk] - ci[kk] * qi[kk]);
    }
  }
  return loss;
}

TotalLoss total_loss_impl(const TrigTables& t, std::span<const Transition> batch,
                          const LossWeights& weights, Gradients* grads) {
  if (batch.empty()) throw std::invalid_argument("total_loss: empty batch");
  TotalLoss out;
  out.bind = binding_loss_impl(t, batch, weights.bind, grads);
  const auto pairs = inverse_action_pairs();
  out.inv = invertibility_loss_impl(t, pairs, weights.inv, grads ? &grads->action : nullptr);
  const auto states = distinct_states(batch);
  out.ortho =
      orthogonality_loss_impl(t, states, weights.ortho, grads ? &grads->state : nullptr);
  out.total = weights.bind * out.bind + weights.inv * out.inv + weights.ortho * out.ortho;
  return out;
}

void apply_clipped(std::span<Mat* const> params, std::span<Mat* const> grads,
                   double max_norm, const char* what) {
  if (params.size() != grads.size()) throw std::invalid_argument(std::string(what) + ": parameter/gradient count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i]->rows != grads[i]->rows || params[i]->cols != grads[i]->cols)
      throw std::invalid_argument(std::string(what) + ": shape mismatch");
  clip_gradients(grads, max_norm);
}

}  // namespace

std::vector<std::pair<int, int>> inverse_action_pairs() {
  return {{kUp, kDown}, {kLeft, kRight}};
}

std::vector<int> distinct_states(std::span<const Transition> batch) {
  std::vector<int> states;
  states.reserve(batch.size() * 2);
  for (const Transition& t : batch) {
    states.push_back(t.s);
    states.push_back(t.s_next);
  }
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

double binding_loss(const StateEncoder& enc_s, const ActionEncoder& enc_a,
                    std::span<const Transition> batch, Gradients* grads) {
  TrigTables t(enc_s, enc_a);
  return binding_loss_impl(t, batch, 1.0, grads);
}

double invertibility_loss(const ActionEncoder& enc_a,
                          std::span<const std::pair<int, int>> pairs, Mat* grad_action) {
  // The state table is unused; a 1x1 stand-in keeps table construction cheap.
  StateEncoder dummy(enc_a.dim, 1);
  TrigTables t(dummy, enc_a);
  return invertibility_loss_impl(t, pairs, 1.0, grad_action);
}

double orthogonality_loss(const StateEncoder& enc_s, std::span<const int> states,
                          Mat* grad_state) {
  ActionEncoder dummy(enc_s.dim, 1);
  TrigTables t(enc_s, dummy);
  return orthogonality_loss_impl(t, states, 1.0, grad_state);
}

TotalLoss total_loss(const EncoderPair& enc, std::span<const Transition> batch,
                     const LossWeights& weights, Gradients* grads) {
  TrigTables t(enc.state, enc.action);
  return total_loss_impl(t, batch, weights, grads);
}

void AdamState::init(std::span<Mat* const> params) {
  m.clear();
  v.clear();
  for (const Mat* p : params) {
    m.emplace_back(p->rows, p->cols);
    v.emplace_back(p->rows, p->cols);
  }
  step = 0;
}

void clip_gradients(std::span<Mat* const> grads, double max_norm) {
  if (max_norm <= 0.0) throw std::invalid_argument("clip_gradients: max_norm must be positive");
  std::vector<const Mat*> views(grads.begin(), grads.end());
  const double norm = global_norm(views);
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  for (Mat* g : grads)
    for (double& x : g->data) x *= scale;
}

void adam_step(std::span<Mat* const> params, std::span<Mat* const> grads,
               AdamState& state, double lr, double grad_clip) {
  apply_clipped(params, grads, grad_clip, "adam_step");
  if (state.m.size() != params.size()) state.init(params);
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Mat& p = *params[i];
    const Mat& g = *grads[i];
    Mat& m = state.m[i];
    Mat& v = state.v[i];
    for (std::size_t k = 0; k < p.data.size(); ++k) {
      m.data[k] = state.beta1 * m.data[k] + (1.0 - state.beta1) * g.data[k];
      v.data[k] = state.beta2 * v.data[k] + (1.0 - state.beta2) * g.data[k] * g.data[k];
      const double m_hat = m.data[k] / bc1;
      const double v_hat = v.data[k] / bc2;
      p.data[k] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  }
}

void sgd_step(std::span<Mat* const> params, std::span<Mat* const> grads, double lr,
              double grad_clip) {
  apply_clipped(params, grads, grad_clip, "sgd_step");
  for (std::size_t i = 0; i < params.size(); ++i) axpy(-lr, *grads[i], *params[i]);
}

TrainResult train(const DatasetSplit& data, std::size_t dim, std::size_t n_states,
                  std::size_t n_actions, const TrainConfig& cfg, const LossWeights& weights) {
  if (data.train.empty()) throw std::invalid_argument("train: empty training set");
  if (cfg.epochs == 0) throw std::invalid_argument("train: epochs must be positive");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be positive");
  if (!(cfg.grad_clip > 0.0)) throw std::invalid_argument("train: grad_clip must be positive");

  TrainResult result;
  result.enc = new_encoders(dim, n_states, n_actions, cfg.seed);
  EncoderPair& enc = result.enc;

  Mat* params[] = {&enc.state.theta, &enc.action.theta};
  AdamState opt;
  opt.init(params);

  const std::size_t n = data.train.size();
  const std::size_t batch_size =
      (cfg.batch_size == 0 || cfg.batch_size >= n) ? n : cfg.batch_size;
  Rng shuffle_rng(derive_seed(cfg.seed, "batch-shuffle"));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<Transition> batch(batch_size);

  Gradients grads{Mat(n_states, dim), Mat(n_actions, dim)};
  result.report.reserve(cfg.epochs);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (batch_size < n) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j = i + shuffle_rng.uniform_int(n - i);
        std::swap(order[i], order[j]);
      }
    }
    LossRow row{epoch + 1, 0.0, 0.0, 0.0, 0.0};
    std::size_t n_batches = 0;
    for (std::size_t off = 0; off < n; off += batch_size) {
      const std::size_t len = std::min(batch_size, n - off);
      if (len < batch_size) batch.resize(len);
      for (std::size_t i = 0; i < len; ++i) batch[i] = data.train[order[off + i]];

      TrigTables tables(enc.state, enc.action);
      grads.state.fill(0.0);
      grads.action.fill(0.0);
      const TotalLoss tl = total_loss_impl(tables, batch, weights, &grads);

      Mat* gs[] = {&grads.state, &grads.action};
      if (cfg.use_sgd)
        sgd_step(params, gs, cfg.learning_rate, cfg.grad_clip);
      else
        adam_step(params, gs, opt, cfg.learning_rate, cfg.grad_clip);
      ++enc.generation;

      row.bind += tl.bind;
      row.inv += tl.inv;
      row.ortho += tl.ortho;
      row.total += tl.total;
      ++n_batches;
    }
    batch.resize(batch_size);
    const double inv_nb = 1.0 / static_cast<double>(n_batches);
    row.bind *= inv_nb;
    row.inv *= inv_nb;
    row.ortho *= inv_nb;
    row.total *= inv_nb;
    result.report.push_back(row);
  }
  return result;
}

double gradient_check(const EncoderPair& enc, std::span<const Transition> batch,
                      const LossWeights& weights, std::size_t n_probes, double h,
                      std::uint64_t seed) {
  if (!(h > 0.0)) throw std::invalid_argument("gradient_check: h must be positive");
  EncoderPair work = enc;
  Gradients grads{Mat(work.state.n_symbols, work.state.dim),
                  Mat(work.action.n_symbols, work.action.dim)};
  total_loss(work, batch, weights, &grads);

  const std::size_t n_state = work.state.theta.data.size();
  const std::size_t n_total = n_state + work.action.theta.data.size();
  Rng rng(derive_seed(seed, "grad-probe"));
  double worst = 0.0;
  for (std::size_t p = 0; p < n_probes; ++p) {
    const std::size_t idx = rng.uniform_int(n_total);
    double* param = idx < n_state ? &work.state.theta.data[idx]
                                  : &work.action.theta.data[idx - n_state];
    const double analytic =
        idx < n_state ? grads.state.data[idx] : grads.action.data[idx - n_state];
    const double saved = *param;
    *param = saved + h;
    const double up = total_loss(work, batch, weights, nullptr).total;
    *param = saved - h;
    const double down = total_loss(work, batch, weights, nullptr).total;
    *param = saved;
    const double fd = (up - down) / (2.0 * h);
    const double diff = std::abs(analytic - fd);
    if (diff < 1e-8) continue;
    const double err = diff / std::max(std::abs(analytic), std::abs(fd));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace holo
