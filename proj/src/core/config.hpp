// Flat key=value run configuration with '#' comments. Every key has a
// documented default; unknown keys and malformed values fail with a
// diagnostic naming the offending key.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

/// Parse failure carrying the offending key (empty when the line itself is
/// malformed).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  std::string model = "fhrr";  // fhrr | hrr | mlp-s | mlp-m | mlp-l
  std::size_t dim = 512;
  int grid_rows = 10;
  int grid_cols = 10;
  double zero_shot_ratio = 0.2;
  std::size_t epochs = 500;
  std::optional<double> learning_rate;  // default depends on model kind
  double grad_clip = 1.0;
  std::string optimizer = "adam";  // adam | sgd
  std::size_t batch_size = 0;      // 0 = full batch
  double w_bind = 2.0;
  double w_inv = 0.5;
  double w_ortho = 0.05;
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  std::size_t trials = 500;
  std::vector<std::size_t> horizons = {5, 20, 100};
  std::size_t cleanup_period = 2;
  std::vector<double> noise_sigmas = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> sweep_ratios = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t sweep_horizon = 20;
  std::vector<std::string> sweep_models = {"fhrr", "mlp-m"};
  std::vector<std::string> bench_models = {"fhrr", "hrr", "mlp-s", "mlp-m", "mlp-l"};
  std::vector<std::string> table1_models = {"fhrr", "mlp-s", "mlp-m", "mlp-l"};
  std::size_t bench_reps = 2000;
  std::string out_dir = "runs/out";
  std::string checkpoint;  // optional: load instead of training where possible

  /// 0.007 for the phase models, 0.0005 for the MLPs, unless overridden.
  double effective_learning_rate() const;
  double effective_learning_rate(const std::string& model_kind) const;

  /// Set one key from its textual form. Throws ConfigError on unknown keys or
  /// malformed values.
  void set(const std::string& key, const std::string& value);

  /// Get one key's current value in textual form. Throws ConfigError on
  /// unknown keys.
  std::string get(const std::string& key) const;

  /// All keys and current values, in a stable order.
  std::map<std::string, std::string> entries() const;

  /// Serialized key=value form (parseable by parse_config).
  std::string to_text() const;

  /// Validate cross-field constraints (ranges, enumerations). Throws
  /// ConfigError naming the violated key.
  void validate() const;
};

/// Parse a config from text. Lines are `key = value`, blank, or comments.
RunConfig parse_config_text(const std::string& text);

/// Parse a config file. Throws ConfigError (I/O failures use key "<file>").
RunConfig parse_config_file(const std::string& path);

}  // namespace holo
