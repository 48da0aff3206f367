#include <fstream>
#include <string>

#include <doctest.h>

#include "core/config.hpp"
#include "test_util.hpp"

using namespace holo;

TEST_CASE("defaults are visible through get()") {
  const RunConfig cfg;
  CHECK(cfg.get("model") == "fhrr");
  CHECK(cfg.get("dim") == "512");
  CHECK(cfg.get("grid_rows") == "10");
  CHECK(cfg.get("grid_cols") == "10");
  CHECK(cfg.get("zero_shot_ratio") == "0.2");
  CHECK(cfg.get("epochs") == "500");
  CHECK(cfg.get("learning_rate") == "0.007");  // model-dependent default
  CHECK(cfg.get("grad_clip") == "1");
  CHECK(cfg.get("optimizer") == "adam");
  CHECK(cfg.get("batch_size") == "0");
  CHECK(cfg.get("w_bind") == "2");
  CHECK(cfg.get("w_inv") == "0.5");
  CHECK(cfg.get("w_ortho") == "0.05");
  CHECK(cfg.get("seeds") == "0,1,2");
  CHECK(cfg.get("trials") == "500");
  CHECK(cfg.get("horizons") == "5,20,100");
  CHECK(cfg.get("cleanup_period") == "2");
  CHECK(cfg.get("noise_sigmas") == "0,1,2,3,4,5");
  CHECK(cfg.get("sweep_ratios") == "0.1,0.3,0.5,0.7,0.9");
  CHECK(cfg.get("sweep_horizon") == "20");
  CHECK(cfg.get("sweep_models") == "fhrr,mlp-m");
  CHECK(cfg.get("bench_models") == "fhrr,hrr,mlp-s,mlp-m,mlp-l");
  CHECK(cfg.get("table1_models") == "fhrr,mlp-s,mlp-m,mlp-l");
  CHECK(cfg.get("bench_reps") == "2000");
  CHECK(cfg.get("out_dir") == "runs/out");
  CHECK(cfg.get("checkpoint").empty());
}

TEST_CASE("set/get round-trips scalars, enums, and lists") {
  RunConfig cfg;
  cfg.set("model", "mlp-l");
  CHECK(cfg.model == "mlp-l");
  cfg.set("dim", "1024");
  CHECK(cfg.dim == 1024);
  cfg.set("zero_shot_ratio", "0.35");
  CHECK(cfg.zero_shot_ratio == 0.35);
  cfg.set("seeds", "4, 5, 6, 7");
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 5, 6, 7});
  CHECK(cfg.get("seeds") == "4,5,6,7");
  cfg.set("horizons", "1,2,3");
  CHECK(cfg.horizons == std::vector<std::size_t>{1, 2, 3});
  cfg.set("noise_sigmas", "0.5, 1.5");
  CHECK(cfg.noise_sigmas == std::vector<double>{0.5, 1.5});
  cfg.set("sweep_models", "fhrr, hrr");
  CHECK(cfg.sweep_models == std::vector<std::string>{"fhrr", "hrr"});
  cfg.set("optimizer", "sgd");
  CHECK(cfg.optimizer == "sgd");
  cfg.set("out_dir", "/tmp/some/dir");
  CHECK(cfg.out_dir == "/tmp/some/dir");
  cfg.set("checkpoint", "model.hwm");
  CHECK(cfg.checkpoint == "model.hwm");
}

TEST_CASE("set rejects bad values and names the key") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.set("model", "transformer"), ConfigError);
  CHECK_THROWS_AS(cfg.set("dim", "abc"), ConfigError);
  CHECK_THROWS_AS(cfg.set("dim", "-3"), ConfigError);
  CHECK_THROWS_AS(cfg.set("zero_shot_ratio", "lots"), ConfigError);
  CHECK_THROWS_AS(cfg.set("optimizer", "lbfgs"), ConfigError);
  CHECK_THROWS_AS(cfg.set("seeds", ""), ConfigError);
  CHECK_THROWS_AS(cfg.set("sweep_models", "glove"), ConfigError);
  CHECK_THROWS_AS(cfg.set("no_such_key", "1"), ConfigError);

  try {
    cfg.set("dim", "abc");
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "dim");
    CHECK(std::string(e.what()).find("dim") != std::string::npos);
  }
  try {
    cfg.get("no_such_key");
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "no_such_key");
  }
}

TEST_CASE("text parsing handles comments, blanks, and whitespace") {
  const std::string text =
      "# experiment setup\n"
      "\n"
      "model = mlp-s\n"
      "  dim=64   # inline comment\n"
      "seeds = 1, 2\n"
      "\t\n"
      "epochs = 3\n";
  const RunConfig cfg = parse_config_text(text);
  CHECK(cfg.model == "mlp-s");
  CHECK(cfg.dim == 64);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(cfg.epochs == 3);
  // Untouched keys keep their defaults.
  CHECK(cfg.trials == 500);
}

TEST_CASE("text parsing rejects malformed lines with a line diagnostic") {
  try {
    parse_config_text("model = fhrr\nthis is not a pair\n");
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    CHECK(e.key().empty());
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("= 5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("bogus_key = 5\n"), ConfigError);
  // Parsed configs are validated before being returned.
  CHECK_THROWS_AS(parse_config_text("epochs = 0\n"), ConfigError);
}

TEST_CASE("to_text round-trips through the parser") {
  RunConfig cfg;
  cfg.set("model", "mlp-m");
  cfg.set("dim", "256");
  cfg.set("seeds", "9,10");
  cfg.set("noise_sigmas", "0,0.25,2.5");
  cfg.set("out_dir", "runs/elsewhere");
  const RunConfig again = parse_config_text(cfg.to_text());
  CHECK(again.entries() == cfg.entries());
}

TEST_CASE("validate names the violated key") {
  auto expect_key = [](RunConfig& cfg, const std::string& key) {
    try {
      cfg.validate();
      FAIL("expected a throw for " << key);
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
    }
  };
  RunConfig cfg;
  cfg.dim = 0;
  expect_key(cfg, "dim");
  cfg = RunConfig();
  cfg.zero_shot_ratio = 1.0;
  expect_key(cfg, "zero_shot_ratio");
  cfg = RunConfig();
  cfg.zero_shot_ratio = -0.1;
  expect_key(cfg, "zero_shot_ratio");
  cfg = RunConfig();
  cfg.seeds.clear();
  expect_key(cfg, "seeds");
  cfg = RunConfig();
  cfg.learning_rate = -1.0;
  expect_key(cfg, "learning_rate");
  cfg = RunConfig();
  cfg.grad_clip = 0.0;
  expect_key(cfg, "grad_clip");
  cfg = RunConfig();
  cfg.horizons = {5, 0};
  expect_key(cfg, "horizons");
  cfg = RunConfig();
  cfg.cleanup_period = 0;
  expect_key(cfg, "cleanup_period");
  cfg = RunConfig();
  cfg.noise_sigmas = {-0.5};
  expect_key(cfg, "noise_sigmas");
  cfg = RunConfig();
  cfg.sweep_ratios = {0.5, 1.5};
  expect_key(cfg, "sweep_ratios");
  cfg = RunConfig();
  cfg.grid_rows = 0;
  expect_key(cfg, "grid_rows");
  cfg = RunConfig();
  cfg.trials = 0;
  expect_key(cfg, "trials");
  cfg = RunConfig();
  cfg.bench_reps = 0;
  expect_key(cfg, "bench_reps");

  RunConfig good;
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("learning rate defaults depend on the model kind") {
  RunConfig cfg;
  CHECK(cfg.effective_learning_rate() == 0.007);
  CHECK(cfg.effective_learning_rate("hrr") == 0.007);
  CHECK(cfg.effective_learning_rate("mlp-s") == 0.0005);
  CHECK(cfg.effective_learning_rate("mlp-m") == 0.0005);
  cfg.set("model", "mlp-l");
  CHECK(cfg.effective_learning_rate() == 0.0005);
  cfg.set("learning_rate", "0.42");
  CHECK(cfg.effective_learning_rate() == 0.42);
  CHECK(cfg.effective_learning_rate("fhrr") == 0.42);
}

TEST_CASE("config files load, and missing files name the file pseudo-key") {
  holo_test::TempDir tmp;
  const std::string path = tmp.str("run.cfg");
  std::ofstream out(path);
  out << "model = fhrr\ndim = 128\n# done\n";
  out.close();
  const RunConfig cfg = parse_config_file(path);
  CHECK(cfg.dim == 128);

  try {
    parse_config_file(tmp.str("missing.cfg"));
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "<file>");
  }
}
