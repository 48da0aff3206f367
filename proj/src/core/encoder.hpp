// Learnable FHRR encoders: phase tables over one-hot state/action inputs,
// the derived cleanup codebook, and binary checkpoint round-tripping.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/hypervector.hpp"
#include "core/mat.hpp"

namespace holo {

/// Phase table with one row per symbol and one column per latent dimension.
/// Parameters are unconstrained reals; phases are canonicalized on read, so
/// the optimizer works on an unconstrained (2*pi-periodic) manifold.
///
/// The logical table of the model is dimension x symbols; it is stored
/// transposed (symbol-major) so each symbol's phases are contiguous.
/// Checkpoints serialize the logical dimension-major layout.
struct PhaseTable {
  std::size_t dim = 0;
  std::size_t n_symbols = 0;
  Mat theta;  // n_symbols x dim

  PhaseTable() = default;
  PhaseTable(std::size_t d, std::size_t n) : dim(d), n_symbols(n), theta(n, d) {}
};

struct StateEncoder : PhaseTable {
  using PhaseTable::PhaseTable;
};
struct ActionEncoder : PhaseTable {
  using PhaseTable::PhaseTable;
};

/// The pair of learnable tables, plus a generation counter bumped on every
/// parameter update so dependent caches (the codebook) can detect staleness.
struct EncoderPair {
  StateEncoder state;
  ActionEncoder action;
  std::uint64_t generation = 0;
};

/// All state embeddings in Cartesian form, for cleanup and decoding.
struct Codebook {
  std::size_t dim = 0;
  Mat re;  // n_states x dim
  Mat im;  // n_states x dim
  std::uint64_t generation = 0;

  std::size_t n_states() const { return re.rows; }
  ComplexHV row(std::size_t s) const;
};

/// Fresh tables with i.i.d. uniform(-pi, pi) entries, deterministic per seed.
/// Throws if any dimension is zero.
EncoderPair new_encoders(std::size_t dim, std::size_t n_states, std::size_t n_actions,
                         std::uint64_t seed);

/// Canonicalized phase row for one symbol (a table lookup).
PhaseVector encode_state_phases(const StateEncoder& enc, std::size_t s);
PhaseVector encode_action_phases(const ActionEncoder& enc, std::size_t a);
ComplexHV encode_state(const StateEncoder& enc, std::size_t s);
ComplexHV encode_action(const ActionEncoder& enc, std::size_t a);

/// Snapshot of every state embedding; records the encoder generation.
Codebook build_codebook(const EncoderPair& enc);

/// True when the codebook was built from the encoders' current parameters.
bool codebook_fresh(const Codebook& cb, const EncoderPair& enc);

/// Total learnable scalars: dim * (n_states + n_actions).
std::uint64_t parameter_count(const EncoderPair& enc);

/// Metadata stored in the JSON sidecar next to a checkpoint.
struct CheckpointMeta {
  std::string kind = "fhrr";
  std::uint64_t seed = 0;
  std::uint64_t epoch = 0;
  double w_bind = 2.0;
  double w_inv = 0.5;
  double w_ortho = 0.05;
};

/// Binary checkpoint: magic "HWM1", little-endian u32 {dim, n_states,
/// n_actions}, then the state table and action table as 64-bit floats in
/// dimension-major (row = dimension) order. A JSON sidecar at path + ".json"
/// records the metadata. Round-trips are bit-exact. Throws on I/O failure.
void save_encoders(const std::string& path, const EncoderPair& enc,
                   const CheckpointMeta& meta);
EncoderPair load_encoders(const std::string& path, CheckpointMeta* meta_out = nullptr);

}  // namespace holo
