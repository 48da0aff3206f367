#include "core/encoder.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "core/phase.hpp"
#include "core/rng.hpp"

namespace holo {
namespace {

void require_symbol(std::size_t idx, std::size_t n, const char* what) {
  if (idx >= n) throw std::invalid_argument(std::string(what) + ": index out of range");
}

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

void write_f64(std::ofstream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double read_f64(std::ifstream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

// Tables are stored symbol-major in memory but dimension-major on disk.
void write_table_dim_major(std::ofstream& out, const PhaseTable& t) {
  for (std::size_t d = 0; d < t.dim; ++d)
    for (std::size_t s = 0; s < t.n_symbols; ++s) write_f64(out, t.theta.at(s, d));
}

void read_table_dim_major(std::ifstream& in, PhaseTable& t) {
  for (std::size_t d = 0; d < t.dim; ++d)
    for (std::size_t s = 0; s < t.n_symbols; ++s) t.theta.at(s, d) = read_f64(in);
}

}  // namespace

ComplexHV Codebook::row(std::size_t s) const {
  require_symbol(s, n_states(), "Codebook::row");
  ComplexHV out;
  out.re.assign(re.row(s).begin(), re.row(s).end());
  out.im.assign(im.row(s).begin(), im.row(s).end());
  out.unitary = true;
  return out;
}

EncoderPair new_encoders(std::size_t dim, std::size_t n_states, std::size_t n_actions,
                         std::uint64_t seed) {
  if (dim == 0 || n_states == 0 || n_actions == 0)
    throw std::invalid_argument("new_encoders: all dimensions must be positive");
  EncoderPair enc;
  enc.state = StateEncoder(dim, n_states);
  enc.action = ActionEncoder(dim, n_actions);
  Rng rng(derive_seed(seed, "encoder-init"));
  for (double& v : enc.state.theta.data) v = rng.uniform(-kPi, kPi);
  for (double& v : enc.action.theta.data) v = rng.uniform(-kPi, kPi);
  enc.generation = 0;
  return enc;
}

PhaseVector encode_state_phases(const StateEncoder& enc, std::size_t s) {
  require_symbol(s, enc.n_symbols, "encode_state");
  auto row = enc.theta.row(s);
  return PhaseVector(std::vector<double>(row.begin(), row.end()));
}

PhaseVector encode_action_phases(const ActionEncoder& enc, std::size_t a) {
  require_symbol(a, enc.n_symbols, "encode_action");
  auto row = enc.theta.row(a);
  return PhaseVector(std::vector<double>(row.begin(), row.end()));
}

ComplexHV encode_state(const StateEncoder& enc, std::size_t s) {
  return to_complex(encode_state_phases(enc, s));
}

ComplexHV encode_action(const ActionEncoder& enc, std::size_t a) {
  return to_complex(encode_action_phases(enc, a));
}

Codebook build_codebook(const EncoderPair& enc) {
  Codebook cb;
  cb.dim = enc.state.dim;
  cb.re = Mat(enc.state.n_symbols, enc.state.dim);
  cb.im = Mat(enc.state.n_symbols, enc.state.dim);
  cb.generation = enc.generation;
  for (std::size_t s = 0; s < enc.state.n_symbols; ++s) {
    const ComplexHV hv = encode_state(enc.state, s);
    std::copy(hv.re.begin(), hv.re.end(), cb.re.row(s).begin());
    std::copy(hv.im.begin(), hv.im.end(), cb.im.row(s).begin());
  }
  return cb;
}

bool codebook_fresh(const Codebook& cb, const EncoderPair& enc) {
  return cb.generation == enc.generation && cb.n_states() == enc.state.n_symbols &&
         cb.dim == enc.state.dim;
}

std::uint64_t parameter_count(const EncoderPair& enc) {
  return static_cast<std::uint64_t>(enc.state.dim) *
         (enc.state.n_symbols + enc.action.n_symbols);
}

void save_encoders(const std::string& path, const EncoderPair& enc,
                   const CheckpointMeta& meta) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_encoders: cannot open " + path);
  out.write("HWM1", 4);
  write_u32(out, static_cast<std::uint32_t>(enc.state.dim));
  write_u32(out, static_cast<std::uint32_t>(enc.state.n_symbols));
  write_u32(out, static_cast<std::uint32_t>(enc.action.n_symbols));
  write_table_dim_major(out, enc.state);
  write_table_dim_major(out, enc.action);
  if (!out) throw std::runtime_error("save_encoders: write failed for " + path);
  out.close();

  nlohmann::json side;
  side["kind"] = meta.kind;
  side["seed"] = meta.seed;
  side["epoch"] = meta.epoch;
  side["loss_weights"] = {{"bind", meta.w_bind}, {"inv", meta.w_inv}, {"ortho", meta.w_ortho}};
  std::ofstream sidecar(path + ".json", std::ios::trunc);
  if (!sidecar) throw std::runtime_error("save_encoders: cannot open " + path + ".json");
  sidecar << side.dump(2) << "\n";
}

EncoderPair load_encoders(const std::string& path, CheckpointMeta* meta_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_encoders: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "HWM1", 4) != 0)
    throw std::runtime_error("load_encoders: bad magic in " + path);
  const std::uint32_t dim = read_u32(in);
  const std::uint32_t n_s = read_u32(in);
  const std::uint32_t n_a = read_u32(in);
  if (!in || dim == 0 || n_s == 0 || n_a == 0)
    throw std::runtime_error("load_encoders: corrupt header in " + path);
  EncoderPair enc;
  enc.state = StateEncoder(dim, n_s);
  enc.action = ActionEncoder(dim, n_a);
  read_table_dim_major(in, enc.state);
  read_table_dim_major(in, enc.action);
  if (!in) throw std::runtime_error("load_encoders: truncated file " + path);

  if (meta_out != nullptr) {
    std::ifstream sidecar(path + ".json");
    if (sidecar) {
      nlohmann::json side = nlohmann::json::parse(sidecar, nullptr, false);
      if (!side.is_discarded()) {
        meta_out->kind = side.value("kind", std::string("fhrr"));
        meta_out->seed = side.value("seed", std::uint64_t{0});
        meta_out->epoch = side.value("epoch", std::uint64_t{0});
        if (side.contains("loss_weights")) {
          meta_out->w_bind = side["loss_weights"].value("bind", 2.0);
          meta_out->w_inv = side["loss_weights"].value("inv", 0.5);
          meta_out->w_ortho = side["loss_weights"].value("ortho", 0.05);
        }
      }
    }
  }
  return enc;
}

}  // namespace holo
