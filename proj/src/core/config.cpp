#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace holo {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "config key '" + key + "': expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size() || d < 0) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(d);
  } catch (const std::exception&) {
    throw ConfigError(key,
                      "config key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& key, const std::string& v, F item_parser) {
  std::vector<T> out;
  for (const std::string& item : split_list(v)) out.push_back(item_parser(key, item));
  if (out.empty())
    throw ConfigError(key, "config key '" + key + "': expected a non-empty comma list");
  return out;
}

template <typename T>
std::string join_list(const std::vector<T>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << ",";
    out << items[i];
  }
  return out.str();
}

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string join_doubles(const std::vector<double>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << ",";
    out << format_double(items[i]);
  }
  return out.str();
}

bool known_model(const std::string& m) {
  return m == "fhrr" || m == "hrr" || m == "mlp-s" || m == "mlp-m" || m == "mlp-l";
}

}  // namespace

double RunConfig::effective_learning_rate() const { return effective_learning_rate(model); }

double RunConfig::effective_learning_rate(const std::string& model_kind) const {
  if (learning_rate.has_value()) return *learning_rate;
  return model_kind.rfind("mlp", 0) == 0 ? 0.0005 : 0.007;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "model") {
    if (!known_model(value))
      throw ConfigError(key, "config key 'model': unknown model kind '" + value +
                                 "' (expected fhrr, hrr, mlp-s, mlp-m, or mlp-l)");
    model = value;
  } else if (key == "dim") {
    dim = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "grid_rows") {
    grid_rows = parse_int(key, value);
  } else if (key == "grid_cols") {
    grid_cols = parse_int(key, value);
  } else if (key == "zero_shot_ratio") {
    zero_shot_ratio = parse_double(key, value);
  } else if (key == "epochs") {
    epochs = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "learning_rate") {
    learning_rate = parse_double(key, value);
  } else if (key == "grad_clip") {
    grad_clip = parse_double(key, value);
  } else if (key == "optimizer") {
    if (value != "adam" && value != "sgd")
      throw ConfigError(key, "config key 'optimizer': expected adam or sgd, got '" + value + "'");
    optimizer = value;
  } else if (key == "batch_size") {
    batch_size = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "w_bind") {
    w_bind = parse_double(key, value);
  } else if (key == "w_inv") {
    w_inv = parse_double(key, value);
  } else if (key == "w_ortho") {
    w_ortho = parse_double(key, value);
  } else if (key == "seeds") {
    seeds = parse_list<std::uint64_t>(key, value, parse_uint);
  } else if (key == "trials") {
    trials = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "horizons") {
    horizons = parse_list<std::size_t>(key, value, [](const std::string& k, const std::string& v) {
      return static_cast<std::size_t>(parse_uint(k, v));
    });
  } else if (key == "cleanup_period") {
    cleanup_period = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "noise_sigmas") {
    noise_sigmas = parse_list<double>(key, value, parse_double);
  } else if (key == "sweep_ratios") {
    sweep_ratios = parse_list<double>(key, value, parse_double);
  } else if (key == "sweep_horizon") {
    sweep_horizon = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "sweep_models" || key == "bench_models" || key == "table1_models") {
    auto models = split_list(value);
    if (models.empty())
      throw ConfigError(key, "config key '" + key + "': expected a non-empty comma list");
    for (const std::string& m : models)
      if (!known_model(m))
        throw ConfigError(key, "config key '" + key + "': unknown model kind '" + m + "'");
    if (key == "sweep_models") sweep_models = std::move(models);
    else if (key == "bench_models") bench_models = std::move(models);
    else table1_models = std::move(models);
  } else if (key == "bench_reps") {
    bench_reps = static_cast<std::size_t>(parse_uint(key, value));
  } else if (key == "out_dir") {
    out_dir = value;
  } else if (key == "checkpoint") {
    checkpoint = value;
  } else {
    throw ConfigError(key, "unknown config key '" + key + "'");
  }
}

std::string RunConfig::get(const std::string& key) const {
  const auto all = entries();
  const auto it = all.find(key);
  if (it == all.end()) throw ConfigError(key, "unknown config key '" + key + "'");
  return it->second;
}

std::map<std::string, std::string> RunConfig::entries() const {
  std::map<std::string, std::string> out;
  out["model"] = model;
  out["dim"] = std::to_string(dim);
  out["grid_rows"] = std::to_string(grid_rows);
  out["grid_cols"] = std::to_string(grid_cols);
  out["zero_shot_ratio"] = format_double(zero_shot_ratio);
  out["epochs"] = std::to_string(epochs);
  out["learning_rate"] = format_double(effective_learning_rate());
  out["grad_clip"] = format_double(grad_clip);
  out["optimizer"] = optimizer;
  out["batch_size"] = std::to_string(batch_size);
  out["w_bind"] = format_double(w_bind);
  out["w_inv"] = format_double(w_inv);
  out["w_ortho"] = format_double(w_ortho);
  out["seeds"] = join_list(seeds);
  out["trials"] = std::to_string(trials);
  out["horizons"] = join_list(horizons);
  out["cleanup_period"] = std::to_string(cleanup_period);
  out["noise_sigmas"] = join_doubles(noise_sigmas);
  out["sweep_ratios"] = join_doubles(sweep_ratios);
  out["sweep_horizon"] = std::to_string(sweep_horizon);
  out["sweep_models"] = join_list(sweep_models);
  out["bench_models"] = join_list(bench_models);
  out["table1_models"] = join_list(table1_models);
  out["bench_reps"] = std::to_string(bench_reps);
  out["out_dir"] = out_dir;
  out["checkpoint"] = checkpoint;
  return out;
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries()) out << k << " = " << v << "\n";
  return out.str();
}

void RunConfig::validate() const {
  if (dim == 0) throw ConfigError("dim", "config key 'dim': must be positive");
  if (grid_rows < 1) throw ConfigError("grid_rows", "config key 'grid_rows': must be >= 1");
  if (grid_cols < 1) throw ConfigError("grid_cols", "config key 'grid_cols': must be >= 1");
  if (!(zero_shot_ratio >= 0.0 && zero_shot_ratio < 1.0))
    throw ConfigError("zero_shot_ratio", "config key 'zero_shot_ratio': must lie in [0, 1)");
  if (epochs == 0) throw ConfigError("epochs", "config key 'epochs': must be positive");
  if (!(effective_learning_rate() > 0.0))
    throw ConfigError("learning_rate", "config key 'learning_rate': must be positive");
  if (!(grad_clip > 0.0)) throw ConfigError("grad_clip", "config key 'grad_clip': must be positive");
  if (seeds.empty()) throw ConfigError("seeds", "config key 'seeds': must be non-empty");
  if (trials == 0) throw ConfigError("trials", "config key 'trials': must be positive");
  if (horizons.empty()) throw ConfigError("horizons", "config key 'horizons': must be non-empty");
  for (std::size_t h : horizons)
    if (h == 0) throw ConfigError("horizons", "config key 'horizons': horizons must be >= 1");
  if (cleanup_period == 0)
    throw ConfigError("cleanup_period", "config key 'cleanup_period': must be positive");
  for (double s : noise_sigmas)
    if (s < 0.0) throw ConfigError("noise_sigmas", "config key 'noise_sigmas': must be >= 0");
  for (double r : sweep_ratios)
    if (!(r >= 0.0 && r < 1.0))
      throw ConfigError("sweep_ratios", "config key 'sweep_ratios': ratios must lie in [0, 1)");
  if (sweep_horizon == 0)
    throw ConfigError("sweep_horizon", "config key 'sweep_horizon': must be positive");
  if (bench_reps == 0) throw ConfigError("bench_reps", "config key 'bench_reps': must be positive");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "config line " + std::to_string(line_no) +
                                ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("", "config line " + std::to_string(line_no) + ": empty key");
    cfg.set(key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace holo
