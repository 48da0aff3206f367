// C API implementation: thin translation layer over the C++ core. Exceptions
// are converted to status codes and a thread-local error message.
#include "holoworld.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "core/config.hpp"
#include "core/experiments.hpp"
#include "core/gridworld.hpp"
#include "core/version.hpp"

struct hw_config {
  holo::RunConfig cfg;
};

struct hw_model {
  holo::TrainedModel model;
};

namespace {

thread_local std::string g_last_error;

hw_status fail(hw_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
hw_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HW_OK;
  } catch (const holo::ConfigError& e) {
    return fail(HW_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HW_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HW_ERR_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(HW_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(HW_ERR_INTERNAL, e.what());
  }
}

hw_status require(bool ok, const char* message) {
  return ok ? HW_OK : fail(HW_ERR_INVALID_ARGUMENT, message);
}

hw_status copy_string(const std::string& value, char* buf, size_t buf_len) {
  if (buf == nullptr) return fail(HW_ERR_INVALID_ARGUMENT, "output buffer is NULL");
  if (buf_len < value.size() + 1) {
    return fail(HW_ERR_INVALID_ARGUMENT,
                "output buffer too small (need " + std::to_string(value.size() + 1) +
                    " bytes)");
  }
  std::memcpy(buf, value.c_str(), value.size() + 1);
  g_last_error.clear();
  return HW_OK;
}

}  // namespace

extern "C" {

const char* hw_version(void) { return holo::kVersionString; }

const char* hw_last_error(void) { return g_last_error.c_str(); }

hw_status hw_config_create(hw_config** out) {
  if (hw_status s = require(out != nullptr, "out pointer is NULL"); s != HW_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new hw_config{holo::RunConfig{}}; });
}

hw_status hw_config_load(const char* path, hw_config** out) {
  if (hw_status s = require(out != nullptr, "out pointer is NULL"); s != HW_OK) return s;
  if (hw_status s = require(path != nullptr, "path is NULL"); s != HW_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new hw_config{holo::parse_config_file(path)}; });
}

hw_status hw_config_set(hw_config* cfg, const char* key, const char* value) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(key != nullptr && value != nullptr, "key/value is NULL");
      s != HW_OK) {
    return s;
  }
  return guarded([&] { cfg->cfg.set(key, value); });
}

hw_status hw_config_get(const hw_config* cfg, const char* key, char* buf, size_t buf_len) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(key != nullptr, "key is NULL"); s != HW_OK) return s;
  std::string value;
  if (hw_status s = guarded([&] { value = cfg->cfg.get(key); }); s != HW_OK) return s;
  return copy_string(value, buf, buf_len);
}

void hw_config_free(hw_config* cfg) { delete cfg; }

hw_status hw_run(const hw_config* cfg, const char* command) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(command != nullptr, "command is NULL"); s != HW_OK) return s;
  return guarded([&] { holo::run_command(cfg->cfg, command); });
}

hw_status hw_model_train(const hw_config* cfg, const char* kind, double holdout_ratio,
                         uint64_t seed, hw_model** out) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(kind != nullptr, "kind is NULL"); s != HW_OK) return s;
  if (hw_status s = require(out != nullptr, "out pointer is NULL"); s != HW_OK) return s;
  *out = nullptr;
  return guarded(
      [&] { *out = new hw_model{holo::train_model(cfg->cfg, kind, holdout_ratio, seed)}; });
}

hw_status hw_model_load(const hw_config* cfg, const char* path, hw_model** out) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(path != nullptr, "path is NULL"); s != HW_OK) return s;
  if (hw_status s = require(out != nullptr, "out pointer is NULL"); s != HW_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new hw_model{holo::load_model(cfg->cfg, path)}; });
}

hw_status hw_model_save(const hw_config* cfg, const hw_model* model, const char* path) {
  if (hw_status s = require(cfg != nullptr, "config is NULL"); s != HW_OK) return s;
  if (hw_status s = require(model != nullptr, "model is NULL"); s != HW_OK) return s;
  if (hw_status s = require(path != nullptr, "path is NULL"); s != HW_OK) return s;
  return guarded([&] {
    const holo::TrainedModel& m = model->model;
    if (const auto* f = std::get_if<holo::FhrrRun>(&m.backend)) {
      holo::CheckpointMeta meta;
      meta.kind = m.kind;
      meta.seed = m.seed;
      meta.epoch = m.epochs;
      meta.w_bind = cfg->cfg.w_bind;
      meta.w_inv = cfg->cfg.w_inv;
      meta.w_ortho = cfg->cfg.w_ortho;
      holo::save_encoders(path, f->enc, meta);
    } else if (const auto* p = std::get_if<holo::MlpRun>(&m.backend)) {
      holo::save_mlp(path, p->model, m.seed, m.epochs);
    } else {
      throw std::invalid_argument("the hrr backend has no checkpoint format");
    }
  });
}

hw_status hw_model_predict(const hw_model* model, int s, int a, int* out_decoded,
                           double* out_cosine) {
  if (hw_status st = require(model != nullptr, "model is NULL"); st != HW_OK) return st;
  return guarded([&] {
    holo::PredictOutcome p = holo::predict_decode(model->model, s, a);
    if (out_decoded != nullptr) *out_decoded = p.decoded;
    if (out_cosine != nullptr) *out_cosine = p.cosine;
  });
}

hw_status hw_model_rollout(const hw_model* model, uint64_t horizon, uint64_t cleanup_period,
                           uint64_t trials, uint64_t seed, double* out_final_accuracy) {
  if (hw_status st = require(model != nullptr, "model is NULL"); st != HW_OK) return st;
  if (hw_status st = require(out_final_accuracy != nullptr, "out pointer is NULL");
      st != HW_OK) {
    return st;
  }
  return guarded([&] {
    holo::CleanupPolicy policy = cleanup_period == 0
                                     ? holo::CleanupPolicy::disabled()
                                     : holo::CleanupPolicy::every(cleanup_period);
    holo::RolloutSummary summary =
        holo::rollout_accuracy(model->model, horizon, policy, trials, seed);
    *out_final_accuracy = summary.final_accuracy;
  });
}

hw_status hw_model_kind(const hw_model* model, char* buf, size_t buf_len) {
  if (hw_status st = require(model != nullptr, "model is NULL"); st != HW_OK) return st;
  return copy_string(model->model.kind, buf, buf_len);
}

uint64_t hw_model_parameter_count(const hw_model* model) {
  if (model == nullptr) return 0;
  return holo::model_parameter_count(model->model);
}

void hw_model_free(hw_model* model) { delete model; }

hw_status hw_grid_step(int rows, int cols, int s, int a, int* out_s_next) {
  if (hw_status st = require(out_s_next != nullptr, "out pointer is NULL"); st != HW_OK) {
    return st;
  }
  return guarded([&] {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid shape must be positive");
    *out_s_next = holo::step(holo::GridSpec{rows, cols}, s, a);
  });
}

}  // extern "C"
