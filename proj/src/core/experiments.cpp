#include "core/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/version.hpp"

namespace holo {
namespace {

using nlohmann::json;

// Shortest round-trip decimal form (what the JSON serializer emits), used for
// CSV cells and metric key suffixes so text artifacts stay deterministic.
std::string num(double x) { return json(x).dump(); }

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One seed's named scalar metrics.
using MetricRow = std::map<std::string, double>;

// metrics.json sub-object: {"seed_<k>": {...}, ..., "mean": {...}}.
json seeds_block(const std::vector<std::pair<std::uint64_t, MetricRow>>& rows) {
  json out = json::object();
  MetricRow sums;
  std::map<std::string, int> counts;
  for (const auto& [seed, row] : rows) {
    json r = json::object();
    for (const auto& [k, v] : row) {
      r[k] = v;
      sums[k] += v;
      counts[k] += 1;
    }
    out["seed_" + std::to_string(seed)] = std::move(r);
  }
  json mean = json::object();
  for (const auto& [k, v] : sums) mean[k] = v / counts[k];
  out["mean"] = std::move(mean);
  return out;
}

const char* split_name(bool holdout) { return holdout ? "holdout" : "train"; }

std::string dataset_csv(const GridSpec& g, const DatasetSplit& split) {
  std::vector<char> held(static_cast<std::size_t>(g.n_states()) * GridSpec::n_actions(), 0);
  for (const Transition& t : split.holdout) {
    held[static_cast<std::size_t>(t.s) * GridSpec::n_actions() + t.a] = 1;
  }
  std::string csv = "s,a,s_next,split\n";
  for (const Transition& t : enumerate_transitions(g)) {
    bool holdout = held[static_cast<std::size_t>(t.s) * GridSpec::n_actions() + t.a] != 0;
    csv += std::to_string(t.s) + "," + std::to_string(t.a) + "," +
           std::to_string(t.s_next) + "," + split_name(holdout) + "\n";
  }
  return csv;
}

std::uint64_t sidecar_field(const std::string& checkpoint_path, const char* key) {
  std::ifstream in(checkpoint_path + ".json");
  if (!in) return 0;
  json meta = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (meta.is_discarded() || !meta.contains(key) || !meta[key].is_number()) return 0;
  return meta[key].get<std::uint64_t>();
}

GridSpec grid_of(const RunConfig& cfg) { return GridSpec{cfg.grid_rows, cfg.grid_cols}; }

DatasetSplit split_of(const RunConfig& cfg, const GridSpec& g, double ratio,
                      std::uint64_t seed) {
  return zero_shot_split(enumerate_transitions(g), ratio, seed);
}

}  // namespace

bool is_mlp_kind(const std::string& kind) {
  return kind == "mlp-s" || kind == "mlp-m" || kind == "mlp-l";
}

MlpVariant mlp_variant_for_kind(const std::string& kind) {
  if (kind == "mlp-s") return MlpVariant::S;
  if (kind == "mlp-m") return MlpVariant::M;
  if (kind == "mlp-l") return MlpVariant::L;
  throw std::invalid_argument("not an mlp model kind: '" + kind + "'");
}

std::string kind_for_mlp_config(const MlpConfig& cfg) {
  if (cfg.hidden_layers == 2 && cfg.hidden_width == 128) return "mlp-s";
  if (cfg.hidden_layers == 4 && cfg.hidden_width == 256) return "mlp-m";
  if (cfg.hidden_layers == 6 && cfg.hidden_width == 512) return "mlp-l";
  return "mlp";
}

TrainedModel train_model(const RunConfig& cfg, const std::string& kind,
                         double holdout_ratio, std::uint64_t seed) {
  GridSpec g = grid_of(cfg);
  TrainedModel out;
  out.kind = kind;
  out.grid = g;
  out.split = split_of(cfg, g, holdout_ratio, seed);
  out.seed = seed;
  out.epochs = cfg.epochs;
  const auto n_states = static_cast<std::size_t>(g.n_states());
  const auto n_actions = static_cast<std::size_t>(GridSpec::n_actions());
  if (kind == "fhrr") {
    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.learning_rate = cfg.effective_learning_rate(kind);
    tc.grad_clip = cfg.grad_clip;
    tc.batch_size = cfg.batch_size;
    tc.seed = seed;
    tc.use_sgd = (cfg.optimizer == "sgd");
    LossWeights w{cfg.w_bind, cfg.w_inv, cfg.w_ortho};
    TrainResult r = train(out.split, cfg.dim, n_states, n_actions, tc, w);
    Codebook cb = build_codebook(r.enc);
    out.backend = FhrrRun{std::move(r.enc), std::move(cb), std::move(r.report)};
  } else if (kind == "hrr") {
    out.backend = HrrRun{hrr_init(cfg.dim, n_states, n_actions, seed)};
  } else if (is_mlp_kind(kind)) {
    MlpConfig mc = MlpConfig::for_variant(mlp_variant_for_kind(kind));
    MlpTrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.learning_rate = cfg.effective_learning_rate(kind);
    tc.grad_clip = cfg.grad_clip;
    tc.seed = seed;
    MlpTrainResult r = mlp_train(out.split, mc, n_states, n_actions, tc);
    out.backend = MlpRun{std::move(r.model), std::move(r.mse)};
  } else {
    throw ConfigError("model", "unknown model kind '" + kind + "'");
  }
  return out;
}

TrainedModel train_model(const RunConfig& cfg, std::uint64_t seed) {
  return train_model(cfg, cfg.model, cfg.zero_shot_ratio, seed);
}

TrainedModel load_model(const RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (!in) throw std::runtime_error("checkpoint '" + path + "' is truncated");
  in.close();

  GridSpec g = grid_of(cfg);
  TrainedModel out;
  out.grid = g;
  if (std::string_view(magic, 4) == "HWM1") {
    CheckpointMeta meta;
    EncoderPair enc = load_encoders(path, &meta);
    if (enc.state.n_symbols != static_cast<std::size_t>(g.n_states()) ||
        enc.action.n_symbols != static_cast<std::size_t>(GridSpec::n_actions())) {
      throw std::runtime_error("checkpoint '" + path + "' does not match a " +
                               std::to_string(g.rows) + "x" + std::to_string(g.cols) +
                               " grid");
    }
    out.kind = "fhrr";
    out.seed = meta.seed;
    out.epochs = meta.epoch;
    Codebook cb = build_codebook(enc);
    out.backend = FhrrRun{std::move(enc), std::move(cb), {}};
  } else if (std::string_view(magic, 4) == "HWMB") {
    MlpModel m = load_mlp(path);
    if (m.n_states != static_cast<std::size_t>(g.n_states()) ||
        m.n_actions != static_cast<std::size_t>(GridSpec::n_actions())) {
      throw std::runtime_error("checkpoint '" + path + "' does not match a " +
                               std::to_string(g.rows) + "x" + std::to_string(g.cols) +
                               " grid");
    }
    out.kind = kind_for_mlp_config(m.cfg);
    out.seed = sidecar_field(path, "seed");
    out.epochs = sidecar_field(path, "epoch");
    out.backend = MlpRun{std::move(m), {}};
  } else {
    throw std::runtime_error("checkpoint '" + path + "' has an unrecognized format");
  }
  out.split = split_of(cfg, g, cfg.zero_shot_ratio, out.seed);
  return out;
}

std::uint64_t model_parameter_count(const TrainedModel& m) {
  if (const auto* f = std::get_if<FhrrRun>(&m.backend)) return parameter_count(f->enc);
  if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
    return mlp_parameter_count(p->model.cfg, p->model.n_states, p->model.n_actions);
  }
  return hrr_parameter_count(std::get<HrrRun>(m.backend).model);
}

PredictOutcome predict_decode(const TrainedModel& m, int s, int a) {
  int s_next = step(m.grid, s, a);  // also validates the indices
  if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
    LatentState z{encode_state(f->enc.state, static_cast<std::size_t>(s))};
    LatentState pred =
        predict_next(z, encode_action(f->enc.action, static_cast<std::size_t>(a)));
    auto [idx, snapped] = cleanup(pred, f->cb);
    (void)snapped;
    return {idx, similarity(pred.hv, f->cb.row(static_cast<std::size_t>(s_next)))};
  }
  if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
    std::vector<double> pred = mlp_forward(p->model, s, a);
    int idx = mlp_decode(p->model, pred);
    return {idx, cosine(pred, p->model.state_table.row(static_cast<std::size_t>(s_next)))};
  }
  const HrrModel& h = std::get<HrrRun>(m.backend).model;
  std::vector<double> pred = hrr_predict(h, s, a);
  return {hrr_decode(h, pred),
          cosine(pred, h.state_table.row(static_cast<std::size_t>(s_next)))};
}

OneStepMetrics one_step_metrics(const TrainedModel& m, std::span<const Transition> ts) {
  if (ts.empty()) throw std::invalid_argument("one-step evaluation needs transitions");
  OneStepMetrics out;
  out.count = ts.size();
  for (const Transition& t : ts) {
    PredictOutcome p = predict_decode(m, t.s, t.a);
    out.accuracy += (p.decoded == t.s_next) ? 1.0 : 0.0;
    out.cosine_x100 += p.cosine;
  }
  out.accuracy /= static_cast<double>(ts.size());
  out.cosine_x100 *= 100.0 / static_cast<double>(ts.size());
  return out;
}

RolloutSummary rollout_accuracy(const TrainedModel& m, std::size_t horizon,
                                const CleanupPolicy& policy, std::size_t n_trials,
                                std::uint64_t seed, std::vector<TrialRecord>* records) {
  if (horizon == 0) throw std::invalid_argument("rollout horizon must be positive");
  if (n_trials == 0) throw std::invalid_argument("rollout needs at least one trial");
  if (std::holds_alternative<HrrRun>(m.backend)) {
    throw std::invalid_argument("multi-step rollouts are not defined for the hrr backend");
  }
  const std::string stream = "trial-h" + std::to_string(horizon);
  const std::size_t period = policy.enabled ? policy.period : 0;
  std::vector<TrialRecord> recs(n_trials);
  parallel_for(n_trials, [&](std::size_t t) {
    Trajectory traj = sample_trajectory(m.grid, horizon, derive_seed(seed, stream, t));
    std::span<const int> truth(traj.states.data() + 1, horizon);
    RolloutResult r;
    if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
      std::vector<ComplexHV> acts;
      acts.reserve(horizon);
      for (int a : traj.actions) {
        acts.push_back(encode_action(f->enc.action, static_cast<std::size_t>(a)));
      }
      LatentState z0{encode_state(f->enc.state, static_cast<std::size_t>(traj.start))};
      r = rollout_with_cleanup(z0, acts, f->cb, policy, truth);
    } else {
      const auto& p = std::get<MlpRun>(m.backend);
      r = mlp_rollout(p.model, traj.start, traj.actions, policy, truth);
    }
    recs[t] = TrialRecord{t, horizon, period, r.final_correct, r.steps_correct(truth)};
  });
  RolloutSummary s;
  s.trials = n_trials;
  for (const TrialRecord& r : recs) {
    s.final_accuracy += r.final_correct ? 1.0 : 0.0;
    s.mean_steps_correct += static_cast<double>(r.steps_correct);
  }
  s.final_accuracy /= static_cast<double>(n_trials);
  s.mean_steps_correct /= static_cast<double>(n_trials);
  if (records) *records = std::move(recs);
  return s;
}

double noisy_one_step_accuracy(const TrainedModel& m, std::span<const Transition> ts,
                               double sigma, std::uint64_t seed) {
  if (ts.empty()) throw std::invalid_argument("noise evaluation needs transitions");
  if (std::holds_alternative<HrrRun>(m.backend)) {
    throw std::invalid_argument("noise evaluation is not defined for the hrr backend");
  }
  std::vector<char> correct(ts.size(), 0);
  parallel_for(ts.size(), [&](std::size_t i) {
    const Transition& t = ts[i];
    const std::uint64_t noise_seed = derive_seed(seed, "noise", i);
    if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
      LatentState z{encode_state(f->enc.state, static_cast<std::size_t>(t.s))};
      LatentState pred =
          predict_next(z, encode_action(f->enc.action, static_cast<std::size_t>(t.a)));
      LatentState noisy = add_noise(pred, sigma, noise_seed);
      correct[i] = (cleanup(noisy, f->cb).first == t.s_next) ? 1 : 0;
    } else {
      const auto& p = std::get<MlpRun>(m.backend);
      correct[i] = (mlp_decode_noisy(p.model, t.s, t.a, sigma, noise_seed) == t.s_next)
                       ? 1
                       : 0;
    }
  });
  double acc = 0.0;
  for (char c : correct) acc += c;
  return acc / static_cast<double>(ts.size());
}

std::vector<KernelCurve> kernel_profiles(const EncoderPair& enc, const GridSpec& g,
                                         std::span<const int> states, int k_min,
                                         int k_max) {
  if (states.empty()) throw std::invalid_argument("kernel profiles need base states");
  if (k_min > k_max) throw std::invalid_argument("kernel profile range is empty");
  std::vector<KernelCurve> curves;
  const std::size_t n_k = static_cast<std::size_t>(k_max - k_min + 1);
  for (int a = 0; a < GridSpec::n_actions(); ++a) {
    KernelCurve c;
    c.action = a;
    c.ks.resize(n_k);
    std::vector<double> sums(n_k, 0.0);
    std::vector<int> counts(n_k, 0);
    for (std::size_t i = 0; i < n_k; ++i) c.ks[i] = k_min + static_cast<int>(i);
    for (int s : states) {
      for (const auto& [k, sim] : similarity_profile(enc.state, s, a, k_min, k_max, g)) {
        const auto i = static_cast<std::size_t>(k - k_min);
        sums[i] += sim;
        counts[i] += 1;
      }
    }
    c.mean_similarity.resize(n_k, 0.0);
    c.n_states = counts;
    for (std::size_t i = 0; i < n_k; ++i) {
      if (counts[i] > 0) c.mean_similarity[i] = sums[i] / counts[i];
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<int> default_profile_states(const GridSpec& g) {
  std::vector<int> rows;
  for (int r : {(g.rows - 1) / 2, g.rows / 2}) {
    if (rows.empty() || rows.back() != r) rows.push_back(r);
  }
  std::vector<int> states;
  for (int r : rows) {
    for (int dc = -2; dc <= 2; ++dc) {
      int c = g.cols / 2 + dc;
      if (c >= 0 && c < g.cols) states.push_back(r * g.cols + c);
    }
  }
  return states;
}

namespace {

// ---------------------------------------------------------------------------
// Command implementations. Each fills `metrics` (nested experiment -> model ->
// seed) and writes its CSV/checkpoint artifacts into cfg.out_dir.
// ---------------------------------------------------------------------------

void save_model(const RunConfig& cfg, const TrainedModel& m, const std::string& path) {
  if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
    CheckpointMeta meta;
    meta.kind = m.kind;
    meta.seed = m.seed;
    meta.epoch = m.epochs;
    meta.w_bind = cfg.w_bind;
    meta.w_inv = cfg.w_inv;
    meta.w_ortho = cfg.w_ortho;
    save_encoders(path, f->enc, meta);
  } else if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
    save_mlp(path, p->model, m.seed, m.epochs);
  } else {
    throw std::invalid_argument("the hrr backend has no checkpoint format");
  }
}

std::string checkpoint_name(const TrainedModel& m) {
  const char* ext = std::holds_alternative<MlpRun>(m.backend) ? ".hwmb" : ".hwm";
  return "model_" + m.kind + "_seed" + std::to_string(m.seed) + ext;
}

void cmd_train(const RunConfig& cfg, json& metrics) {
  if (cfg.model == "hrr") {
    throw ConfigError("model",
                      "model 'hrr' has no training objective; use eval, export, or bench");
  }
  std::vector<std::pair<std::uint64_t, MetricRow>> rows;
  for (std::uint64_t seed : cfg.seeds) {
    TrainedModel m = train_model(cfg, seed);
    write_file(join_path(cfg.out_dir, "dataset_seed" + std::to_string(seed) + ".csv"),
               dataset_csv(m.grid, m.split));
    MetricRow row;
    row["parameters"] = static_cast<double>(model_parameter_count(m));
    std::string losses_csv;
    if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
      losses_csv = "epoch,bind,inv,ortho,total\n";
      for (const LossRow& lr : f->losses) {
        losses_csv += std::to_string(lr.epoch) + "," + num(lr.bind) + "," + num(lr.inv) +
                      "," + num(lr.ortho) + "," + num(lr.total) + "\n";
      }
      if (!f->losses.empty()) {
        const LossRow& last = f->losses.back();
        row["final_bind"] = last.bind;
        row["final_inv"] = last.inv;
        row["final_ortho"] = last.ortho;
        row["final_total"] = last.total;
      }
    } else if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
      losses_csv = "epoch,mse\n";
      for (std::size_t e = 0; e < p->mse.size(); ++e) {
        losses_csv += std::to_string(e + 1) + "," + num(p->mse[e]) + "\n";
      }
      if (!p->mse.empty()) row["final_mse"] = p->mse.back();
    }
    write_file(
        join_path(cfg.out_dir, "losses_" + m.kind + "_seed" + std::to_string(seed) + ".csv"),
        losses_csv);
    save_model(cfg, m, join_path(cfg.out_dir, checkpoint_name(m)));
    rows.emplace_back(seed, std::move(row));
  }
  metrics["train"][cfg.model] = seeds_block(rows);
}

std::vector<TrainedModel> models_for_eval(const RunConfig& cfg) {
  std::vector<TrainedModel> models;
  if (!cfg.checkpoint.empty()) {
    models.push_back(load_model(cfg, cfg.checkpoint));
  } else {
    for (std::uint64_t seed : cfg.seeds) models.push_back(train_model(cfg, seed));
  }
  return models;
}

void cmd_eval(const RunConfig& cfg, json& metrics) {
  std::vector<std::pair<std::uint64_t, MetricRow>> rows;
  std::string kind;
  for (const TrainedModel& m : models_for_eval(cfg)) {
    kind = m.kind;
    std::vector<Transition> all = enumerate_transitions(m.grid);
    OneStepMetrics on_all = one_step_metrics(m, all);
    MetricRow row;
    row["parameters"] = static_cast<double>(model_parameter_count(m));
    row["accuracy_all"] = on_all.accuracy;
    row["cosine_x100_all"] = on_all.cosine_x100;
    if (!m.split.train.empty()) {
      OneStepMetrics on_train = one_step_metrics(m, m.split.train);
      row["accuracy_train"] = on_train.accuracy;
      row["cosine_x100_train"] = on_train.cosine_x100;
    }
    if (!m.split.holdout.empty()) {
      OneStepMetrics zs = one_step_metrics(m, m.split.holdout);
      row["accuracy_zero_shot"] = zs.accuracy;
      row["cosine_x100_zero_shot"] = zs.cosine_x100;
    }
    rows.emplace_back(m.seed, std::move(row));
  }
  metrics["eval"][kind] = seeds_block(rows);
}

void cmd_rollout(const RunConfig& cfg, json& metrics) {
  std::vector<std::pair<std::uint64_t, MetricRow>> rows;
  std::string kind;
  for (const TrainedModel& m : models_for_eval(cfg)) {
    kind = m.kind;
    MetricRow row;
    std::string csv = "trial,horizon,cleanup_period,final_correct,steps_correct\n";
    for (std::size_t h : cfg.horizons) {
      for (bool clean : {false, true}) {
        CleanupPolicy policy =
            clean ? CleanupPolicy::every(cfg.cleanup_period) : CleanupPolicy::disabled();
        std::vector<TrialRecord> recs;
        RolloutSummary s = rollout_accuracy(m, h, policy, cfg.trials, m.seed, &recs);
        for (const TrialRecord& r : recs) {
          csv += std::to_string(r.trial) + "," + std::to_string(r.horizon) + "," +
                 std::to_string(r.cleanup_period) + "," + (r.final_correct ? "1" : "0") +
                 "," + std::to_string(r.steps_correct) + "\n";
        }
        std::string key = "h" + std::to_string(h) + (clean ? "_clean" : "");
        row[key] = s.final_accuracy;
        row[key + "_steps"] = s.mean_steps_correct;
      }
    }
    write_file(join_path(cfg.out_dir,
                         "rollouts_" + m.kind + "_seed" + std::to_string(m.seed) + ".csv"),
               csv);
    rows.emplace_back(m.seed, std::move(row));
  }
  metrics["rollout"][kind] = seeds_block(rows);
}

void cmd_sweep_zeroshot(const RunConfig& cfg, json& metrics) {
  std::string csv = "ratio,model,cleanup,seed,accuracy\n";
  json block = json::object();
  const std::string h_key = "h" + std::to_string(cfg.sweep_horizon);
  for (const std::string& kind : cfg.sweep_models) {
    json per_ratio = json::object();
    for (double ratio : cfg.sweep_ratios) {
      std::vector<std::pair<std::uint64_t, MetricRow>> rows;
      for (std::uint64_t seed : cfg.seeds) {
        TrainedModel m = train_model(cfg, kind, ratio, seed);
        RolloutSummary off = rollout_accuracy(m, cfg.sweep_horizon,
                                              CleanupPolicy::disabled(), cfg.trials, seed);
        RolloutSummary on =
            rollout_accuracy(m, cfg.sweep_horizon, CleanupPolicy::every(cfg.cleanup_period),
                             cfg.trials, seed);
        csv += num(ratio) + "," + kind + ",0," + std::to_string(seed) + "," +
               num(off.final_accuracy) + "\n";
        csv += num(ratio) + "," + kind + ",1," + std::to_string(seed) + "," +
               num(on.final_accuracy) + "\n";
        MetricRow row;
        row[h_key] = off.final_accuracy;
        row[h_key + "_clean"] = on.final_accuracy;
        rows.emplace_back(seed, std::move(row));
      }
      per_ratio["ratio_" + num(ratio)] = seeds_block(rows);
    }
    block[kind] = std::move(per_ratio);
  }
  metrics["zeroshot_sweep"] = std::move(block);
  write_file(join_path(cfg.out_dir, "figure2.csv"), csv);
}

void cmd_sweep_noise(const RunConfig& cfg, json& metrics) {
  std::string csv = "sigma,model,seed,accuracy\n";
  json block = json::object();
  for (const std::string& kind : cfg.sweep_models) {
    if (kind == "hrr") {
      throw ConfigError("sweep_models", "noise sweeps are not defined for the hrr backend");
    }
    std::vector<std::pair<std::uint64_t, MetricRow>> rows;
    for (std::uint64_t seed : cfg.seeds) {
      TrainedModel m = train_model(cfg, kind, cfg.zero_shot_ratio, seed);
      std::vector<Transition> all = enumerate_transitions(m.grid);
      MetricRow row;
      for (double sigma : cfg.noise_sigmas) {
        double acc = noisy_one_step_accuracy(m, all, sigma, seed);
        csv += num(sigma) + "," + kind + "," + std::to_string(seed) + "," + num(acc) + "\n";
        row["sigma_" + num(sigma)] = acc;
      }
      rows.emplace_back(seed, std::move(row));
    }
    block[kind] = seeds_block(rows);
  }
  metrics["noise_sweep"] = std::move(block);
  write_file(join_path(cfg.out_dir, "figure4a.csv"), csv);
}

void cmd_kernel(const RunConfig& cfg, json& metrics) {
  if (cfg.model != "fhrr") {
    throw ConfigError("model", "kernel profiles are defined for the fhrr model only");
  }
  std::string csv = "seed,action,k,mean_similarity,n_states\n";
  std::vector<std::pair<std::uint64_t, MetricRow>> rows;
  for (std::uint64_t seed : cfg.seeds) {
    TrainedModel m = train_model(cfg, seed);
    const auto& f = std::get<FhrrRun>(m.backend);
    std::vector<int> states = default_profile_states(m.grid);
    std::vector<KernelCurve> curves = kernel_profiles(f.enc, m.grid, states, -10, 10);
    MetricRow row;
    for (const KernelCurve& c : curves) {
      double best = -2.0;
      int best_k = 0;
      for (std::size_t i = 0; i < c.ks.size(); ++i) {
        csv += std::to_string(seed) + "," + std::to_string(c.action) + "," +
               std::to_string(c.ks[i]) + "," + num(c.mean_similarity[i]) + "," +
               std::to_string(c.n_states[i]) + "\n";
        if (c.n_states[i] > 0 && c.mean_similarity[i] > best) {
          best = c.mean_similarity[i];
          best_k = c.ks[i];
        }
      }
      row["peak_at_zero_a" + std::to_string(c.action)] = (best_k == 0) ? 1.0 : 0.0;
    }
    // Mirror check: the "up" curve at +k and the "down" curve at -k describe
    // the same state pair, so their averaged curves must coincide.
    const KernelCurve& up = curves[static_cast<std::size_t>(Action::kUp)];
    const KernelCurve& down = curves[static_cast<std::size_t>(Action::kDown)];
    double mad = 0.0;
    int n_mad = 0;
    for (std::size_t i = 0; i < up.ks.size(); ++i) {
      std::size_t j = up.ks.size() - 1 - i;  // k and -k
      if (up.n_states[i] > 0 && down.n_states[j] > 0) {
        mad += std::abs(up.mean_similarity[i] - down.mean_similarity[j]);
        n_mad += 1;
      }
    }
    row["mirror_mad_up_down"] = (n_mad > 0) ? mad / n_mad : 0.0;
    rows.emplace_back(seed, std::move(row));
  }
  metrics["kernel"]["fhrr"] = seeds_block(rows);
  write_file(join_path(cfg.out_dir, "figure4b.csv"), csv);
}

void cmd_export(const RunConfig& cfg, json& metrics) {
  std::vector<std::pair<std::uint64_t, MetricRow>> rows;
  std::string kind;
  for (const TrainedModel& m : models_for_eval(cfg)) {
    kind = m.kind;
    std::string csv = "state,row,col";
    std::size_t width = 0;
    if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
      width = f->enc.state.dim;
      for (std::size_t d = 0; d < width; ++d) csv += ",phase_" + std::to_string(d);
    } else if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
      width = p->model.cfg.state_dim;
      for (std::size_t d = 0; d < width; ++d) csv += ",e_" + std::to_string(d);
    } else {
      width = std::get<HrrRun>(m.backend).model.dim;
      for (std::size_t d = 0; d < width; ++d) csv += ",v_" + std::to_string(d);
    }
    csv += "\n";
    for (int s = 0; s < m.grid.n_states(); ++s) {
      csv += std::to_string(s) + "," + std::to_string(s / m.grid.cols) + "," +
             std::to_string(s % m.grid.cols);
      if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
        PhaseVector ph = encode_state_phases(f->enc.state, static_cast<std::size_t>(s));
        for (double v : ph.phases) csv += "," + num(v);
      } else if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
        for (double v : p->model.state_table.row(static_cast<std::size_t>(s))) {
          csv += "," + num(v);
        }
      } else {
        const HrrModel& h = std::get<HrrRun>(m.backend).model;
        for (double v : h.state_table.row(static_cast<std::size_t>(s))) csv += "," + num(v);
      }
      csv += "\n";
    }
    write_file(join_path(cfg.out_dir,
                         "embeddings_" + m.kind + "_seed" + std::to_string(m.seed) + ".csv"),
               csv);
    MetricRow row;
    row["states"] = static_cast<double>(m.grid.n_states());
    row["embedding_dim"] = static_cast<double>(width);
    rows.emplace_back(m.seed, std::move(row));
  }
  metrics["export"][kind] = seeds_block(rows);
}

double median_ms(std::vector<double>& samples_ns) {
  std::size_t mid = samples_ns.size() / 2;
  std::nth_element(samples_ns.begin(), samples_ns.begin() + static_cast<std::ptrdiff_t>(mid),
                   samples_ns.end());
  return samples_ns[mid] / 1e6;
}

double time_step_ms(const std::function<void(const Transition&)>& fn,
                    std::span<const Transition> ts, std::size_t reps) {
  using clock = std::chrono::steady_clock;
  const std::size_t warmup = reps / 10 + 1;
  for (std::size_t i = 0; i < warmup; ++i) fn(ts[i % ts.size()]);
  std::vector<double> samples(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const Transition& t = ts[i % ts.size()];
    auto t0 = clock::now();
    fn(t);
    auto t1 = clock::now();
    samples[i] =
        static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  return median_ms(samples);
}

void cmd_bench(const RunConfig& cfg, json& metrics) {
  std::string csv = "model,parameters,ms_per_step,ms_per_step_cleanup\n";
  json block = json::object();
  // `sink` defeats dead-code elimination of the timed work.
  volatile double sink = 0.0;
  for (const std::string& kind : cfg.bench_models) {
    TrainedModel m = train_model(cfg, kind, cfg.zero_shot_ratio, cfg.seeds.front());
    std::vector<Transition> all = enumerate_transitions(m.grid);
    std::function<void(const Transition&)> raw, with_cleanup;
    if (const auto* f = std::get_if<FhrrRun>(&m.backend)) {
      raw = [&, f](const Transition& t) {
        LatentState z{encode_state(f->enc.state, static_cast<std::size_t>(t.s))};
        LatentState p =
            predict_next(z, encode_action(f->enc.action, static_cast<std::size_t>(t.a)));
        sink = sink + p.hv.re[0];
      };
      with_cleanup = [&, f](const Transition& t) {
        LatentState z{encode_state(f->enc.state, static_cast<std::size_t>(t.s))};
        LatentState p =
            predict_next(z, encode_action(f->enc.action, static_cast<std::size_t>(t.a)));
        sink = sink + cleanup(p, f->cb).first;
      };
    } else if (const auto* p = std::get_if<MlpRun>(&m.backend)) {
      raw = [&, p](const Transition& t) { sink = sink + mlp_forward(p->model, t.s, t.a)[0]; };
      with_cleanup = [&, p](const Transition& t) {
        sink = sink + mlp_decode(p->model, mlp_forward(p->model, t.s, t.a));
      };
    } else {
      const HrrModel* h = &std::get<HrrRun>(m.backend).model;
      raw = [&, h](const Transition& t) { sink = sink + hrr_predict(*h, t.s, t.a)[0]; };
      with_cleanup = [&, h](const Transition& t) {
        sink = sink + hrr_decode(*h, hrr_predict(*h, t.s, t.a));
      };
    }
    double ms_raw = time_step_ms(raw, all, cfg.bench_reps);
    double ms_clean = time_step_ms(with_cleanup, all, cfg.bench_reps);
    auto params = static_cast<double>(model_parameter_count(m));
    csv += kind + "," + std::to_string(model_parameter_count(m)) + "," + num(ms_raw) + "," +
           num(ms_clean) + "\n";
    json row = json::object();
    row["parameters"] = params;
    row["ms_per_step"] = ms_raw;
    row["ms_per_step_cleanup"] = ms_clean;
    block[kind] = std::move(row);
  }
  metrics["bench"] = std::move(block);
  write_file(join_path(cfg.out_dir, "bench.csv"), csv);
}

void cmd_table1(const RunConfig& cfg, json& metrics) {
  // Wide CSV mirroring the headline results table; accuracies are reported
  // as percentages there, fractions in metrics.json.
  std::string csv = "model,seed,parameters,accuracy_all,cosine_x100_all,accuracy_zero_shot,"
                    "cosine_x100_zero_shot";
  for (std::size_t h : cfg.horizons) csv += ",h" + std::to_string(h);
  for (std::size_t h : cfg.horizons) csv += ",h" + std::to_string(h) + "_clean";
  csv += "\n";

  json block = json::object();
  // kind -> seed -> metric row, kept for the ordering checks below.
  std::map<std::string, std::vector<std::pair<std::uint64_t, MetricRow>>> results;
  for (const std::string& kind : cfg.table1_models) {
    std::vector<std::pair<std::uint64_t, MetricRow>> rows;
    for (std::uint64_t seed : cfg.seeds) {
      TrainedModel m = train_model(cfg, kind, cfg.zero_shot_ratio, seed);
      std::vector<Transition> all = enumerate_transitions(m.grid);
      OneStepMetrics on_all = one_step_metrics(m, all);
      MetricRow row;
      row["parameters"] = static_cast<double>(model_parameter_count(m));
      row["accuracy_all"] = on_all.accuracy;
      row["cosine_x100_all"] = on_all.cosine_x100;
      if (!m.split.holdout.empty()) {
        OneStepMetrics zs = one_step_metrics(m, m.split.holdout);
        row["accuracy_zero_shot"] = zs.accuracy;
        row["cosine_x100_zero_shot"] = zs.cosine_x100;
      }
      for (std::size_t h : cfg.horizons) {
        RolloutSummary off =
            rollout_accuracy(m, h, CleanupPolicy::disabled(), cfg.trials, seed);
        RolloutSummary on =
            rollout_accuracy(m, h, CleanupPolicy::every(cfg.cleanup_period), cfg.trials, seed);
        row["h" + std::to_string(h)] = off.final_accuracy;
        row["h" + std::to_string(h) + "_clean"] = on.final_accuracy;
      }
      csv += kind + "," + std::to_string(seed) + "," +
             std::to_string(model_parameter_count(m)) + "," + num(row["accuracy_all"] * 100) +
             "," + num(row["cosine_x100_all"]) + "," +
             num(row.count("accuracy_zero_shot") ? row["accuracy_zero_shot"] * 100 : 0.0) +
             "," + num(row.count("cosine_x100_zero_shot") ? row["cosine_x100_zero_shot"] : 0.0);
      for (std::size_t h : cfg.horizons) {
        csv += "," + num(row["h" + std::to_string(h)] * 100);
      }
      for (std::size_t h : cfg.horizons) {
        csv += "," + num(row["h" + std::to_string(h) + "_clean"] * 100);
      }
      csv += "\n";
      rows.emplace_back(seed, std::move(row));
    }
    block[kind] = seeds_block(rows);
    results[kind] = std::move(rows);
  }

  // Ordinal claims, checked per seed: the phase model beats every MLP variant
  // on zero-shot accuracy and on the horizon-20 cleanup rollout.
  if (results.count("fhrr")) {
    const std::size_t h_ref =
        std::count(cfg.horizons.begin(), cfg.horizons.end(), std::size_t{20}) != 0
            ? std::size_t{20}
            : cfg.horizons.front();
    const std::string h_key = "h" + std::to_string(h_ref) + "_clean";
    json checks = json::object();
    for (const auto& [kind, rows] : results) {
      if (kind == "fhrr") continue;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const MetricRow& f = results.at("fhrr")[i].second;
        const MetricRow& o = rows[i].second;
        const std::string tag = kind + "_seed" + std::to_string(rows[i].first);
        if (f.count("accuracy_zero_shot") && o.count("accuracy_zero_shot")) {
          checks["fhrr_beats_" + tag + "_zero_shot"] =
              f.at("accuracy_zero_shot") > o.at("accuracy_zero_shot");
        }
        if (f.count(h_key) && o.count(h_key)) {
          checks["fhrr_beats_" + tag + "_" + h_key] = f.at(h_key) > o.at(h_key);
        }
      }
    }
    block["checks"] = std::move(checks);
  }
  metrics["table1"] = std::move(block);
  write_file(join_path(cfg.out_dir, "table1.csv"), csv);
}

void write_manifest(const RunConfig& cfg, const std::string& command) {
  json manifest = json::object();
  manifest["command"] = command;
  manifest["version"] = std::string("holoworld-") + kVersionString;
  manifest["timestamp_utc"] = utc_timestamp();
  manifest["seeds"] = cfg.seeds;
  json conf = json::object();
  for (const auto& [k, v] : cfg.entries()) conf[k] = v;
  manifest["config"] = std::move(conf);
  write_file(join_path(cfg.out_dir, "run_manifest.json"), manifest.dump(2) + "\n");
}

}  // namespace

void run_command(const RunConfig& cfg, const std::string& command) {
  cfg.validate();
  ensure_dir(cfg.out_dir);
  json metrics = json::object();
  if (command == "train") {
    cmd_train(cfg, metrics);
  } else if (command == "eval") {
    cmd_eval(cfg, metrics);
  } else if (command == "rollout") {
    cmd_rollout(cfg, metrics);
  } else if (command == "sweep-zeroshot") {
    cmd_sweep_zeroshot(cfg, metrics);
  } else if (command == "sweep-noise") {
    cmd_sweep_noise(cfg, metrics);
  } else if (command == "kernel") {
    cmd_kernel(cfg, metrics);
  } else if (command == "export") {
    cmd_export(cfg, metrics);
  } else if (command == "bench") {
    cmd_bench(cfg, metrics);
  } else if (command == "repro-table1") {
    cmd_table1(cfg, metrics);
  } else {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
  write_file(join_path(cfg.out_dir, "metrics.json"), metrics.dump(2) + "\n");
  write_manifest(cfg, command);
}

}  // namespace holo
