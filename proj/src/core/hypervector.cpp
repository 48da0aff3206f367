#include "core/hypervector.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace holo {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> p) : phases(std::move(p)) {
  canonicalize(phases);
}

PhaseVector identity_phase_vector(std::size_t d) { return PhaseVector(d); }

PhaseVector random_phase_vector(std::size_t d, PhaseDist dist, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("random_phase_vector: dimension must be positive");
  Rng rng(seed);
  std::vector<double> phases(d);
  switch (dist) {
    case PhaseDist::Uniform:
      for (double& p : phases) p = rng.uniform(-kPi, kPi);
      break;
    case PhaseDist::Gaussian:
      for (double& p : phases) p = rng.normal();
      break;
  }
  return PhaseVector(std::move(phases));
}

PhaseVector bind(const PhaseVector& a, const PhaseVector& b) {
  require_same_dim(a.dim(), b.dim(), "bind");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.phases[i] + b.phases[i];
  return PhaseVector(std::move(out));
}

PhaseVector inverse(const PhaseVector& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -v.phases[i];
  return PhaseVector(std::move(out));
}

ComplexHV to_complex(const PhaseVector& v) {
  ComplexHV out;
  out.re.resize(v.dim());
  out.im.resize(v.dim());
  out.unitary = true;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out.re[i] = std::cos(v.phases[i]);
    out.im[i] = std::sin(v.phases[i]);
  }
  return out;
}

PhaseVector to_phases(const ComplexHV& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::atan2(v.im[i], v.re[i]);
  return PhaseVector(std::move(out));
}

ComplexHV conjugate(const ComplexHV& v) {
  ComplexHV out = v;
  for (double& x : out.im) x = -x;
  return out;
}

ComplexHV complex_multiply(const ComplexHV& a, const ComplexHV& b) {
  require_same_dim(a.dim(), b.dim(), "complex_multiply");
  ComplexHV out;
  out.re.resize(a.dim());
  out.im.resize(a.dim());
  out.unitary = a.unitary && b.unitary;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.re[i] = a.re[i] * b.re[i] - a.im[i] * b.im[i];
    out.im[i] = a.re[i] * b.im[i] + a.im[i] * b.re[i];
  }
  return out;
}

ComplexHV bundle(std::span<const ComplexHV> vs) {
  if (vs.empty()) throw std::invalid_argument("bundle: empty input");
  const std::size_t d = vs.front().dim();
  ComplexHV out;
  out.re.assign(d, 0.0);
  out.im.assign(d, 0.0);
  out.unitary = false;
  for (const ComplexHV& v : vs) {
    require_same_dim(v.dim(), d, "bundle");
    for (std::size_t i = 0; i < d; ++i) {
      out.re[i] += v.re[i];
      out.im[i] += v.im[i];
    }
  }
  return out;
}

double similarity(const ComplexHV& a, const ComplexHV& b) {
  require_same_dim(a.dim(), b.dim(), "similarity");
  if (a.dim() == 0) throw std::invalid_argument("similarity: empty vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a.re[i] * b.re[i] + a.im[i] * b.im[i];
  return acc / static_cast<double>(a.dim());
}

double similarity(const PhaseVector& a, const PhaseVector& b) {
  require_same_dim(a.dim(), b.dim(), "similarity");
  if (a.dim() == 0) throw std::invalid_argument("similarity: empty vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::cos(a.phases[i] - b.phases[i]);
  return acc / static_cast<double>(a.dim());
}

PhaseVector phase_encode_phases(std::span<const double> x, const Mat& m) {
  if (m.cols != x.size())
    throw std::invalid_argument("phase_encode: input length does not match matrix columns");
  std::vector<double> phases(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + r * m.cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * x[c];
    phases[r] = acc;
  }
  return PhaseVector(std::move(phases));
}

ComplexHV phase_encode(std::span<const double> x, const Mat& m) {
  return to_complex(phase_encode_phases(x, m));
}

std::vector<double> hrr_random(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("hrr_random: dimension must be positive");
  Rng rng(seed);
  std::vector<double> out(d);
  for (double& x : out) x = rng.normal();
  return out;
}

std::vector<double> hrr_bind(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "hrr_bind");
  const std::size_t d = a.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const double aj = a[j];
    if (aj == 0.0) continue;
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t idx = j + k;
      if (idx >= d) idx -= d;
      out[idx] += aj * b[k];
    }
  }
  return out;
}

std::vector<double> hrr_unbind(std::span<const double> c, std::span<const double> a) {
  require_same_dim(c.size(), a.size(), "hrr_unbind");
  const std::size_t d = c.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t idx = k + j;
      if (idx >= d) idx -= d;
      acc += a[j] * c[idx];
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> hrr_normalize(std::span<const double> a) {
  const std::size_t d = a.size();
  if (d == 0) throw std::invalid_argument("hrr_normalize: empty vector");
  // Direct O(D^2) DFT; D stays small enough here that no FFT is warranted.
  std::vector<double> spec_re(d), spec_im(d);
  for (std::size_t k = 0; k < d; ++k) {
    double sre = 0.0, sim_ = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
      const double ang = -kTwoPi * static_cast<double>(k) * static_cast<double>(n) /
                         static_cast<double>(d);
      sre += a[n] * std::cos(ang);
      sim_ += a[n] * std::sin(ang);
    }
    const double mag = std::hypot(sre, sim_);
    if (mag < 1e-300) {
      spec_re[k] = 1.0;
      spec_im[k] = 0.0;
    } else {
      spec_re[k] = sre / mag;
      spec_im[k] = sim_ / mag;
    }
  }
  std::vector<double> out(d, 0.0);
  for (std::size_t n = 0; n < d; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double ang = kTwoPi * static_cast<double>(k) * static_cast<double>(n) /
                         static_cast<double>(d);
      acc += spec_re[k] * std::cos(ang) - spec_im[k] * std::sin(ang);
    }
    out[n] = acc / static_cast<double>(d);
  }
  return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "cosine");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace holo
