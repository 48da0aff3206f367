// holoworld CLI: experiment runner over the C API. All heavy lifting lives in
// the shared library; this binary only parses arguments, forwards them, and
// reports errors.
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "holoworld.h"

namespace {

struct Command {
  const char* name;
  const char* description;
};

constexpr Command kCommands[] = {
    {"train", "Train model(s) over the configured seeds; write losses and checkpoints"},
    {"eval", "One-step accuracy and cosine similarity (all / train / zero-shot pairs)"},
    {"rollout", "Multi-step rollout accuracy over the configured horizons"},
    {"sweep-zeroshot", "Rollout accuracy vs zero-shot holdout ratio (figure2.csv)"},
    {"sweep-noise", "One-step accuracy vs latent noise level (figure4a.csv)"},
    {"kernel", "Similarity-kernel profiles around central states (figure4b.csv)"},
    {"export", "Dump state embeddings as CSV for external projection tools"},
    {"bench", "Median one-step inference time per model (bench.csv)"},
    {"repro-table1", "Full results grid over the configured models and seeds (table1.csv)"},
};

int fail_with_last_error(hw_status status) {
  std::fprintf(stderr, "error: %s\n", hw_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoworld: phase-vector world models on a bounded grid"};
  app.set_version_flag("-V,--version", std::string(hw_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  app.add_option("-c,--config", config_path, "Config file (key = value lines, '#' comments)")
      ->check(CLI::ExistingFile);
  app.add_option("-s,--set", overrides, "Override one config key, as key=value")
      ->type_size(1)
      ->allow_extra_args(false);
  app.add_option("-o,--out", out_dir, "Output directory (shorthand for --set out_dir=DIR)");

  for (const Command& c : kCommands) {
    app.add_subcommand(c.name, c.description)->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  hw_config* cfg = nullptr;
  hw_status status = config_path.empty() ? hw_config_create(&cfg)
                                         : hw_config_load(config_path.c_str(), &cfg);
  if (status != HW_OK) return fail_with_last_error(status);

  if (!out_dir.empty()) overrides.push_back("out_dir=" + out_dir);
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      hw_config_free(cfg);
      return static_cast<int>(HW_ERR_PARSE);
    }
    status = hw_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (status != HW_OK) {
      hw_config_free(cfg);
      return fail_with_last_error(status);
    }
  }

  status = hw_run(cfg, command.c_str());
  if (status != HW_OK) {
    hw_config_free(cfg);
    return fail_with_last_error(status);
  }

  char where[4096];
  if (hw_config_get(cfg, "out_dir", where, sizeof(where)) == HW_OK) {
    std::printf("%s: artifacts written to %s\n", command.c_str(), where);
  }
  hw_config_free(cfg);
  return 0;
}
