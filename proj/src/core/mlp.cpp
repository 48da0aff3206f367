#include "core/mlp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "core/hypervector.hpp"
#include "core/rng.hpp"
#include "core/training.hpp"

namespace holo {
namespace {

void write_u32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::ifstream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_mat(std::ofstream& out, const Mat& m) {
  for (double v : m.data) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
  }
}

void read_mat(std::ifstream& in, Mat& m) {
  for (double& v : m.data) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    v = std::bit_cast<double>(bits);
  }
}

std::vector<std::size_t> layer_sizes(const MlpConfig& cfg) {
  std::vector<std::size_t> sizes;
  sizes.push_back(cfg.state_dim + cfg.action_dim);
  for (std::size_t i = 0; i < cfg.hidden_layers; ++i) sizes.push_back(cfg.hidden_width);
  sizes.push_back(cfg.state_dim);
  return sizes;
}

// Forward over a whole batch. Keeps pre-activations for the backward pass.
struct BatchForward {
  Mat x;                  // B x (state_dim + action_dim)
  std::vector<Mat> z;     // pre-activation per layer: B x out
  std::vector<Mat> act;   // post-activation per layer (last layer: identity)
};

void forward_batch(const MlpModel& m, const Mat& x, BatchForward& f) {
  f.x = x;
  f.z.assign(m.n_layers(), Mat());
  f.act.assign(m.n_layers(), Mat());
  const Mat* cur = &f.x;
  for (std::size_t l = 0; l < m.n_layers(); ++l) {
    gemm_nt(*cur, m.weights[l], f.z[l]);
    const double* b = m.biases[l].data.data();
    for (std::size_t r = 0; r < f.z[l].rows; ++r) {
      double* row = f.z[l].row(r).data();
      for (std::size_t c = 0; c < f.z[l].cols; ++c) row[c] += b[c];
    }
    f.act[l] = f.z[l];
    if (l + 1 < m.n_layers())
      for (double& v : f.act[l].data) v = v > 0.0 ? v : 0.0;
    cur = &f.act[l];
  }
}

Mat gather_inputs(const MlpModel& m, std::span<const Transition> batch) {
  Mat x(batch.size(), m.cfg.state_dim + m.cfg.action_dim);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].s < 0 || static_cast<std::size_t>(batch[i].s) >= m.n_states ||
        batch[i].s_next < 0 || static_cast<std::size_t>(batch[i].s_next) >= m.n_states ||
        batch[i].a < 0 || static_cast<std::size_t>(batch[i].a) >= m.n_actions)
      throw std::invalid_argument("mlp batch loss: transition index out of range");
    const auto srow = m.state_table.row(static_cast<std::size_t>(batch[i].s));
    const auto arow = m.action_table.row(static_cast<std::size_t>(batch[i].a));
    double* out = x.row(i).data();
    std::copy(srow.begin(), srow.end(), out);
    std::copy(arow.begin(), arow.end(), out + m.cfg.state_dim);
  }
  return x;
}

struct MlpGradients {
  Mat state_table;
  Mat action_table;
  std::vector<Mat> weights;
  std::vector<Mat> biases;
};

void zero_like(const MlpModel& m, MlpGradients& g) {
  g.state_table = Mat(m.state_table.rows, m.state_table.cols);
  g.action_table = Mat(m.action_table.rows, m.action_table.cols);
  g.weights.clear();
  g.biases.clear();
  for (std::size_t l = 0; l < m.n_layers(); ++l) {
    g.weights.emplace_back(m.weights[l].rows, m.weights[l].cols);
    g.biases.emplace_back(m.biases[l].rows, m.biases[l].cols);
  }
}

// MSE (sum over dims, mean over batch) against the model's own next-state
// rows; fills grads (including the target-side contribution) when non-null.
double batch_loss(const MlpModel& m, std::span<const Transition> batch, MlpGradients* grads) {
  if (batch.empty()) throw std::invalid_argument("mlp batch loss: empty batch");
  const std::size_t b = batch.size();
  const Mat x = gather_inputs(m, batch);
  BatchForward f;
  forward_batch(m, x, f);
  const Mat& pred = f.act.back();

  const double inv_b = 1.0 / static_cast<double>(b);
  double loss = 0.0;
  Mat dz(b, m.cfg.state_dim);
  for (std::size_t i = 0; i < b; ++i) {
    const auto trow = m.state_table.row(static_cast<std::size_t>(batch[i].s_next));
    const double* p = pred.row(i).data();
    double* dzi = dz.row(i).data();
    for (std::size_t c = 0; c < m.cfg.state_dim; ++c) {
      const double diff = p[c] - trow[c];
      loss += diff * diff;
      dzi[c] = 2.0 * inv_b * diff;
    }
  }
  loss *= inv_b;
  if (grads == nullptr) return loss;

  // Target side: the true next-state row moves toward the prediction.
  for (std::size_t i = 0; i < b; ++i) {
    double* g = grads->state_table.row(static_cast<std::size_t>(batch[i].s_next)).data();
    const double* dzi = dz.row(i).data();
    for (std::size_t c = 0; c < m.cfg.state_dim; ++c) g[c] -= dzi[c];
  }

  // Layer-by-layer backward pass.
  for (std::size_t li = m.n_layers(); li-- > 0;) {
    const Mat& input = li == 0 ? f.x : f.act[li - 1];
    Mat dw, dx;
    gemm_tn(dz, input, dw);
    axpy(1.0, dw, grads->weights[li]);
    double* db = grads->biases[li].data.data();
    for (std::size_t r = 0; r < dz.rows; ++r) {
      const double* row = dz.row(r).data();
      for (std::size_t c = 0; c < dz.cols; ++c) db[c] += row[c];
    }
    gemm_nn(dz, m.weights[li], dx);
    if (li == 0) {
      for (std::size_t i = 0; i < b; ++i) {
        double* gs = grads->state_table.row(static_cast<std::size_t>(batch[i].s)).data();
        double* ga = grads->action_table.row(static_cast<std::size_t>(batch[i].a)).data();
        const double* dxi = dx.row(i).data();
        for (std::size_t c = 0; c < m.cfg.state_dim; ++c) gs[c] += dxi[c];
        for (std::size_t c = 0; c < m.cfg.action_dim; ++c) ga[c] += dxi[m.cfg.state_dim + c];
      }
    } else {
      // Push through the rectifier of the previous layer.
      for (std::size_t k = 0; k < dx.data.size(); ++k)
        if (f.z[li - 1].data[k] <= 0.0) dx.data[k] = 0.0;
      dz = std::move(dx);
    }
  }
  return loss;
}

std::vector<Mat*> param_list(MlpModel& m) {
  std::vector<Mat*> ps{&m.state_table, &m.action_table};
  for (auto& w : m.weights) ps.push_back(&w);
  for (auto& bi : m.biases) ps.push_back(&bi);
  return ps;
}

std::vector<Mat*> grad_list(MlpGradients& g) {
  std::vector<Mat*> gs{&g.state_table, &g.action_table};
  for (auto& w : g.weights) gs.push_back(&w);
  for (auto& bi : g.biases) gs.push_back(&bi);
  return gs;
}

std::string variant_name(const MlpConfig& cfg) {
  switch (cfg.variant) {
    case MlpVariant::S: return "mlp-s";
    case MlpVariant::M: return "mlp-m";
    case MlpVariant::L: return "mlp-l";
  }
  return "mlp";
}

}  // namespace

MlpConfig MlpConfig::for_variant(MlpVariant v) {
  MlpConfig cfg;
  cfg.variant = v;
  switch (v) {
    case MlpVariant::S: cfg.hidden_layers = 2; cfg.hidden_width = 128; break;
    case MlpVariant::M: cfg.hidden_layers = 4; cfg.hidden_width = 256; break;
    case MlpVariant::L: cfg.hidden_layers = 6; cfg.hidden_width = 512; break;
  }
  return cfg;
}

MlpConfig MlpConfig::custom(std::size_t hidden_layers, std::size_t hidden_width,
                            std::size_t state_dim, std::size_t action_dim) {
  MlpConfig cfg;
  cfg.hidden_layers = hidden_layers;
  cfg.hidden_width = hidden_width;
  cfg.state_dim = state_dim;
  cfg.action_dim = action_dim;
  return cfg;
}

std::uint64_t mlp_parameter_count(const MlpConfig& cfg, std::size_t n_states,
                                  std::size_t n_actions) {
  std::uint64_t count = static_cast<std::uint64_t>(n_states) * cfg.state_dim +
                        static_cast<std::uint64_t>(n_actions) * cfg.action_dim;
  const auto sizes = layer_sizes(cfg);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
    count += static_cast<std::uint64_t>(sizes[l + 1]) * sizes[l] + sizes[l + 1];
  return count;
}

MlpModel mlp_init(const MlpConfig& cfg, std::size_t n_states, std::size_t n_actions,
                  std::uint64_t seed) {
  if (n_states == 0 || n_actions == 0 || cfg.state_dim == 0 || cfg.action_dim == 0 ||
      cfg.hidden_layers == 0 || cfg.hidden_width == 0)
    throw std::invalid_argument("mlp_init: all dimensions must be positive");
  MlpModel m;
  m.cfg = cfg;
  m.n_states = n_states;
  m.n_actions = n_actions;
  m.state_table = Mat(n_states, cfg.state_dim);
  m.action_table = Mat(n_actions, cfg.action_dim);
  Rng rng(derive_seed(seed, "mlp-init"));
  for (double& v : m.state_table.data) v = rng.uniform(-1.0, 1.0);
  for (double& v : m.action_table.data) v = rng.uniform(-1.0, 1.0);
  const auto sizes = layer_sizes(cfg);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t fan_in = sizes[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Mat w(sizes[l + 1], fan_in);
    for (double& v : w.data) v = rng.uniform(-bound, bound);
    Mat b(1, sizes[l + 1]);
    for (double& v : b.data) v = rng.uniform(-bound, bound);
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  return m;
}

std::vector<double> mlp_forward(const MlpModel& m, int s, int a) {
  if (s < 0 || static_cast<std::size_t>(s) >= m.n_states)
    throw std::invalid_argument("mlp_forward: state out of range");
  const auto srow = m.state_table.row(static_cast<std::size_t>(s));
  return mlp_forward_embedding(m, {srow.data(), srow.size()}, a);
}

std::vector<double> mlp_forward_embedding(const MlpModel& m, std::span<const double> state_emb,
                                          int a) {
  if (state_emb.size() != m.cfg.state_dim)
    throw std::invalid_argument("mlp_forward: embedding size mismatch");
  if (a < 0 || static_cast<std::size_t>(a) >= m.n_actions)
    throw std::invalid_argument("mlp_forward: action out of range");
  std::vector<double> cur(m.cfg.state_dim + m.cfg.action_dim);
  std::copy(state_emb.begin(), state_emb.end(), cur.begin());
  const auto arow = m.action_table.row(static_cast<std::size_t>(a));
  std::copy(arow.begin(), arow.end(), cur.begin() + static_cast<std::ptrdiff_t>(m.cfg.state_dim));

  std::vector<double> next;
  for (std::size_t l = 0; l < m.n_layers(); ++l) {
    const Mat& w = m.weights[l];
    next.assign(w.rows, 0.0);
    for (std::size_t r = 0; r < w.rows; ++r) {
      const double* wrow = w.data.data() + r * w.cols;
      double acc = m.biases[l].data[r];
      for (std::size_t c = 0; c < w.cols; ++c) acc += wrow[c] * cur[c];
      next[r] = acc;
    }
    if (l + 1 < m.n_layers())
      for (double& v : next) v = v > 0.0 ? v : 0.0;
    cur = next;
  }
  return cur;
}

int mlp_decode(const MlpModel& m, std::span<const double> predicted) {
  if (predicted.size() != m.cfg.state_dim)
    throw std::invalid_argument("mlp_decode: embedding size mismatch");
  int best = 0;
  double best_sim = -1e300;
  for (std::size_t s = 0; s < m.n_states; ++s) {
    const auto row = m.state_table.row(s);
    const double sim = cosine(predicted, {row.data(), row.size()});
    if (sim > best_sim + 1e-12) {
      best_sim = sim;
      best = static_cast<int>(s);
    }
  }
  return best;
}

MlpTrainResult mlp_train(const DatasetSplit& data, const MlpConfig& cfg,
                         std::size_t n_states, std::size_t n_actions,
                         const MlpTrainConfig& tcfg) {
  if (data.train.empty()) throw std::invalid_argument("mlp_train: empty training set");
  if (tcfg.epochs == 0) throw std::invalid_argument("mlp_train: epochs must be positive");
  MlpTrainResult result;
  result.model = mlp_init(cfg, n_states, n_actions, tcfg.seed);
  MlpModel& m = result.model;

  MlpGradients grads;
  zero_like(m, grads);
  auto params = param_list(m);
  auto gs = grad_list(grads);
  AdamState opt;
  opt.init({params.data(), params.size()});

  result.mse.reserve(tcfg.epochs);
  for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
    for (Mat* g : gs) g->fill(0.0);
    const double loss = batch_loss(m, data.train, &grads);
    adam_step(params, gs, opt, tcfg.learning_rate, tcfg.grad_clip);
    result.mse.push_back(loss);
  }
  return result;
}

RolloutResult mlp_rollout(const MlpModel& m, int s0, std::span<const int> actions,
                          const CleanupPolicy& policy, std::span<const int> truth_states) {
  if (actions.empty()) throw std::invalid_argument("mlp_rollout: empty action list");
  if (truth_states.size() != actions.size())
    throw std::invalid_argument("mlp_rollout: truth length must match horizon");
  if (s0 < 0 || static_cast<std::size_t>(s0) >= m.n_states)
    throw std::invalid_argument("mlp_rollout: state out of range");

  RolloutResult out;
  out.decoded_states.reserve(actions.size());
  out.similarity_to_truth.reserve(actions.size());
  const auto start = m.state_table.row(static_cast<std::size_t>(s0));
  std::vector<double> cur(start.begin(), start.end());
  for (std::size_t t = 0; t < actions.size(); ++t) {
    std::vector<double> pred = mlp_forward_embedding(m, cur, actions[t]);
    const int decoded = mlp_decode(m, pred);
    out.decoded_states.push_back(decoded);
    const auto trow = m.state_table.row(static_cast<std::size_t>(truth_states[t]));
    out.similarity_to_truth.push_back(cosine(pred, {trow.data(), trow.size()}));
    if (policy.enabled && (t + 1) % policy.period == 0) {
      const auto snap = m.state_table.row(static_cast<std::size_t>(decoded));
      cur.assign(snap.begin(), snap.end());
    } else {
      cur = std::move(pred);
    }
  }
  out.final_correct = out.decoded_states.back() == truth_states.back();
  return out;
}

int mlp_decode_noisy(const MlpModel& m, int s, int a, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("mlp_decode_noisy: sigma must be non-negative");
  std::vector<double> pred = mlp_forward(m, s, a);
  if (sigma > 0.0) {
    Rng rng(seed);
    for (double& v : pred) v += rng.normal(0.0, sigma);
  }
  return mlp_decode(m, pred);
}

double mlp_gradient_check(const MlpModel& m, std::span<const Transition> batch,
                          std::size_t n_probes, double h, std::uint64_t seed) {
  if (!(h > 0.0)) throw std::invalid_argument("mlp_gradient_check: h must be positive");
  MlpModel work = m;
  MlpGradients grads;
  zero_like(work, grads);
  batch_loss(work, batch, &grads);

  auto params = param_list(work);
  auto gs = grad_list(grads);
  std::size_t total = 0;
  for (const Mat* p : params) total += p->data.size();

  Rng rng(derive_seed(seed, "mlp-grad-probe"));
  double worst = 0.0;
  for (std::size_t probe = 0; probe < n_probes; ++probe) {
    std::size_t idx = rng.uniform_int(total);
    std::size_t which = 0;
    while (idx >= params[which]->data.size()) {
      idx -= params[which]->data.size();
      ++which;
    }
    double* param = &params[which]->data[idx];
    const double analytic = gs[which]->data[idx];
    const double saved = *param;
    *param = saved + h;
    const double up = batch_loss(work, batch, nullptr);
    *param = saved - h;
    const double down = batch_loss(work, batch, nullptr);
    *param = saved;
    const double fd = (up - down) / (2.0 * h);
    const double diff = std::abs(analytic - fd);
    if (diff < 1e-8) continue;
    worst = std::max(worst, diff / std::max(std::abs(analytic), std::abs(fd)));
  }
  return worst;
}

void save_mlp(const std::string& path, const MlpModel& m, std::uint64_t seed,
              std::uint64_t epoch) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_mlp: cannot open " + path);
  out.write("HWMB", 4);
  write_u32(out, static_cast<std::uint32_t>(m.cfg.state_dim));
  write_u32(out, static_cast<std::uint32_t>(m.cfg.action_dim));
  write_u32(out, static_cast<std::uint32_t>(m.cfg.hidden_layers));
  write_u32(out, static_cast<std::uint32_t>(m.cfg.hidden_width));
  write_u32(out, static_cast<std::uint32_t>(m.n_states));
  write_u32(out, static_cast<std::uint32_t>(m.n_actions));
  write_mat(out, m.state_table);
  write_mat(out, m.action_table);
  for (std::size_t l = 0; l < m.n_layers(); ++l) {
    write_mat(out, m.weights[l]);
    write_mat(out, m.biases[l]);
  }
  if (!out) throw std::runtime_error("save_mlp: write failed for " + path);
  out.close();

  nlohmann::json side;
  side["kind"] = variant_name(m.cfg);
  side["seed"] = seed;
  side["epoch"] = epoch;
  side["shape"] = {{"state_dim", m.cfg.state_dim},
                   {"action_dim", m.cfg.action_dim},
                   {"hidden_layers", m.cfg.hidden_layers},
                   {"hidden_width", m.cfg.hidden_width}};
  std::ofstream sidecar(path + ".json", std::ios::trunc);
  if (!sidecar) throw std::runtime_error("save_mlp: cannot open " + path + ".json");
  sidecar << side.dump(2) << "\n";
}

MlpModel load_mlp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_mlp: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "HWMB", 4) != 0)
    throw std::runtime_error("load_mlp: bad magic in " + path);
  MlpConfig cfg;
  cfg.state_dim = read_u32(in);
  cfg.action_dim = read_u32(in);
  cfg.hidden_layers = read_u32(in);
  cfg.hidden_width = read_u32(in);
  const std::uint32_t n_states = read_u32(in);
  const std::uint32_t n_actions = read_u32(in);
  if (!in || cfg.state_dim == 0 || n_states == 0)
    throw std::runtime_error("load_mlp: corrupt header in " + path);
  if (cfg.hidden_layers == 2 && cfg.hidden_width == 128) cfg.variant = MlpVariant::S;
  else if (cfg.hidden_layers == 4 && cfg.hidden_width == 256) cfg.variant = MlpVariant::M;
  else if (cfg.hidden_layers == 6 && cfg.hidden_width == 512) cfg.variant = MlpVariant::L;

  MlpModel m;
  m.cfg = cfg;
  m.n_states = n_states;
  m.n_actions = n_actions;
  m.state_table = Mat(n_states, cfg.state_dim);
  m.action_table = Mat(n_actions, cfg.action_dim);
  read_mat(in, m.state_table);
  read_mat(in, m.action_table);
  const auto sizes = layer_sizes(cfg);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Mat w(sizes[l + 1], sizes[l]);
    Mat b(1, sizes[l + 1]);
    read_mat(in, w);
    read_mat(in, b);
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  if (!in) throw std::runtime_error("load_mlp: truncated file " + path);
  return m;
}

}  // namespace holo
