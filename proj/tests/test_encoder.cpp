#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "core/encoder.hpp"
#include "core/phase.hpp"
#include "test_util.hpp"

using namespace holo;

TEST_CASE("new_encoders: shapes, ranges, determinism") {
  const EncoderPair enc = new_encoders(64, 100, 4, 5);
  CHECK(enc.state.dim == 64);
  CHECK(enc.state.n_symbols == 100);
  CHECK(enc.action.dim == 64);
  CHECK(enc.action.n_symbols == 4);
  CHECK(enc.generation == 0);
  for (double v : enc.state.theta.data) {
    CHECK(v >= -kPi);
    CHECK(v < kPi);
  }
  const EncoderPair again = new_encoders(64, 100, 4, 5);
  CHECK(enc.state.theta.data == again.state.theta.data);
  CHECK(enc.action.theta.data == again.action.theta.data);
  const EncoderPair other = new_encoders(64, 100, 4, 6);
  CHECK(enc.state.theta.data != other.state.theta.data);

  CHECK_THROWS_AS(new_encoders(0, 100, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(new_encoders(64, 0, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(new_encoders(64, 100, 0, 1), std::invalid_argument);
}

TEST_CASE("encoding reads canonicalized table rows") {
  EncoderPair enc = new_encoders(8, 5, 4, 9);
  // Park a raw parameter outside the canonical range; reads canonicalize.
  enc.state.theta.at(2, 3) = 4.0;
  const PhaseVector v = encode_state_phases(enc.state, 2);
  CHECK(v.phases[3] == doctest::Approx(-2.2831853071795862).epsilon(1e-15));
  const ComplexHV z = encode_state(enc.state, 2);
  CHECK(z.unitary);
  CHECK(z.dim() == 8);

  CHECK_THROWS_AS(encode_state_phases(enc.state, 5), std::invalid_argument);
  CHECK_THROWS_AS(encode_action_phases(enc.action, 4), std::invalid_argument);
}

TEST_CASE("codebook tracks encoder generation") {
  EncoderPair enc = new_encoders(16, 6, 4, 11);
  const Codebook cb = build_codebook(enc);
  CHECK(cb.dim == 16);
  CHECK(cb.n_states() == 6);
  CHECK(codebook_fresh(cb, enc));

  const ComplexHV direct = encode_state(enc.state, 3);
  const ComplexHV row = cb.row(3);
  for (std::size_t d = 0; d < 16; ++d) {
    CHECK(row.re[d] == direct.re[d]);
    CHECK(row.im[d] == direct.im[d]);
  }

  enc.generation += 1;  // a parameter update invalidates the snapshot
  CHECK_FALSE(codebook_fresh(cb, enc));
  CHECK(codebook_fresh(build_codebook(enc), enc));
}

TEST_CASE("parameter count is dim * (states + actions)") {
  CHECK(parameter_count(new_encoders(512, 100, 4, 1)) == 53248);
  CHECK(parameter_count(new_encoders(8, 3, 2, 1)) == 40);
}

TEST_CASE("checkpoints round-trip bit-exactly with sidecar metadata") {
  holo_test::TempDir tmp;
  const std::string path = tmp.str("enc.hwm");

  EncoderPair enc = new_encoders(32, 10, 4, 17);
  enc.state.theta.at(0, 0) = 123.456;  // raw params are stored, not canonicalized
  enc.generation = 42;
  CheckpointMeta meta;
  meta.kind = "fhrr";
  meta.seed = 17;
  meta.epoch = 300;
  meta.w_bind = 2.5;
  meta.w_inv = 0.25;
  meta.w_ortho = 0.01;
  save_encoders(path, enc, meta);

  CheckpointMeta got;
  const EncoderPair loaded = load_encoders(path, &got);
  CHECK(loaded.state.dim == 32);
  CHECK(loaded.state.n_symbols == 10);
  CHECK(loaded.action.n_symbols == 4);
  CHECK(loaded.state.theta.data == enc.state.theta.data);
  CHECK(loaded.action.theta.data == enc.action.theta.data);
  CHECK(got.kind == "fhrr");
  CHECK(got.seed == 17);
  CHECK(got.epoch == 300);
  CHECK(got.w_bind == 2.5);
  CHECK(got.w_inv == 0.25);
  CHECK(got.w_ortho == 0.01);
}

TEST_CASE("checkpoint binary layout: magic, header, dimension-major tables") {
  holo_test::TempDir tmp;
  const std::string path = tmp.str("layout.hwm");

  EncoderPair enc = new_encoders(2, 3, 2, 1);
  // theta(symbol, dim): distinct values everywhere.
  double v = 1.0;
  for (double& x : enc.state.theta.data) x = v++;
  for (double& x : enc.action.theta.data) x = v++;
  save_encoders(path, enc, CheckpointMeta{});

  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "HWM1");
  std::uint32_t dims[3];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  CHECK(dims[0] == 2);
  CHECK(dims[1] == 3);
  CHECK(dims[2] == 2);
  std::vector<double> payload(2 * 3 + 2 * 2);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size() * sizeof(double)));
  REQUIRE(in.good());
  // State table on disk is dimension-major: all of dim 0 first, then dim 1.
  CHECK(payload[0] == enc.state.theta.at(0, 0));
  CHECK(payload[1] == enc.state.theta.at(1, 0));
  CHECK(payload[2] == enc.state.theta.at(2, 0));
  CHECK(payload[3] == enc.state.theta.at(0, 1));
  CHECK(payload[4] == enc.state.theta.at(1, 1));
  CHECK(payload[5] == enc.state.theta.at(2, 1));
  CHECK(payload[6] == enc.action.theta.at(0, 0));
  CHECK(payload[7] == enc.action.theta.at(1, 0));
  CHECK(payload[8] == enc.action.theta.at(0, 1));
  CHECK(payload[9] == enc.action.theta.at(1, 1));
}

TEST_CASE("loading rejects missing and corrupt files") {
  holo_test::TempDir tmp;
  CHECK_THROWS_AS(load_encoders(tmp.str("missing.hwm")), std::runtime_error);

  const std::string bad = tmp.str("bad.hwm");
  std::ofstream out(bad, std::ios::binary);
  out << "NOTAMAGIC-and-some-garbage";
  out.close();
  CHECK_THROWS_AS(load_encoders(bad), std::runtime_error);

  // Truncated payload.
  const std::string trunc = tmp.str("trunc.hwm");
  EncoderPair enc = new_encoders(8, 4, 4, 3);
  save_encoders(trunc, enc, CheckpointMeta{});
  std::ifstream whole(trunc, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(whole)),
                          std::istreambuf_iterator<char>());
  whole.close();
  std::ofstream cut(trunc, std::ios::binary | std::ios::trunc);
  cut.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  cut.close();
  CHECK_THROWS_AS(load_encoders(trunc), std::runtime_error);
}
