// FHRR hypervector algebra: unit-modulus complex vectors stored as phases.
// Binding multiplies entries (adds phases), unbinding conjugates, bundling
// adds. Includes the random-Fourier phase encoding and an HRR backend whose
// binding is circular convolution.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/mat.hpp"
#include "core/phase.hpp"

namespace holo {

/// Distribution used for random phase sampling.
enum class PhaseDist {
  Uniform,   // uniform on [-pi, pi)
  Gaussian,  // N(0, 1), canonicalized
};

/// A D-dimensional unitary complex vector represented by its phases,
/// kept canonical in [-pi, pi).
struct PhaseVector {
  std::vector<double> phases;

  PhaseVector() = default;
  explicit PhaseVector(std::size_t d) : phases(d, 0.0) {}
  explicit PhaseVector(std::vector<double> p);

  std::size_t dim() const { return phases.size(); }
};

/// Cartesian view of a complex vector. `unitary` records whether every entry
/// is known to lie on the unit circle (bundles and noisy vectors are not).
struct ComplexHV {
  std::vector<double> re;
  std::vector<double> im;
  bool unitary = false;

  std::size_t dim() const { return re.size(); }
};

/// All-zero phases: the binding identity.
PhaseVector identity_phase_vector(std::size_t d);

/// i.i.d. random phases, deterministic per seed. Throws on d == 0.
PhaseVector random_phase_vector(std::size_t d, PhaseDist dist, std::uint64_t seed);

/// Element-wise complex multiplication: phase addition, canonicalized.
PhaseVector bind(const PhaseVector& a, const PhaseVector& b);

/// Complex conjugate: phase negation. bind(v, inverse(v)) is the identity.
PhaseVector inverse(const PhaseVector& v);

/// Phase -> Cartesian conversion (always unitary).
ComplexHV to_complex(const PhaseVector& v);

/// Cartesian -> phase conversion via atan2 (modulus information is dropped).
PhaseVector to_phases(const ComplexHV& v);

ComplexHV conjugate(const ComplexHV& v);

/// Element-wise complex product of Cartesian views. Unitary iff both are.
ComplexHV complex_multiply(const ComplexHV& a, const ComplexHV& b);

/// Element-wise complex sum. Result is flagged non-unitary. Throws on empty
/// input or mismatched dimensions.
ComplexHV bundle(std::span<const ComplexHV> vs);

/// (1/D) * Re<a, conj(b)>. In [-1, 1] for unitary inputs.
double similarity(const ComplexHV& a, const ComplexHV& b);
double similarity(const PhaseVector& a, const PhaseVector& b);

/// Random-Fourier phase encoding: phases = canonicalize(M x), so that
/// phase_encode(x + y) = bind(phase_encode(x), phase_encode(y)).
/// M has one row per output dimension and one column per input dimension.
PhaseVector phase_encode_phases(std::span<const double> x, const Mat& m);
ComplexHV phase_encode(std::span<const double> x, const Mat& m);

// --- HRR backend (real vectors, circular convolution) ---

/// i.i.d. N(0, 1) samples, deterministic per seed.
std::vector<double> hrr_random(std::size_t d, std::uint64_t seed);

/// Circular convolution c_k = sum_j a_j * b_{(k - j) mod D}.
std::vector<double> hrr_bind(std::span<const double> a, std::span<const double> b);

/// Circular correlation: the approximate inverse of hrr_bind,
/// r_k = sum_j a_j * c_{(k + j) mod D}.
std::vector<double> hrr_unbind(std::span<const double> c, std::span<const double> a);

/// Project a real vector onto the set of vectors whose DFT spectrum has unit
/// magnitude in every bin (zero bins are left at unit magnitude). For such
/// vectors circular correlation inverts circular convolution exactly, and the
/// time-domain Euclidean norm is 1.
std::vector<double> hrr_normalize(std::span<const double> a);

/// Plain cosine similarity of real vectors (0 when either norm is 0).
double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace holo
