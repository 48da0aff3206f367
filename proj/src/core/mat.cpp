#include "core/mat.hpp"

#include <cmath>

namespace holo {

void gemm_nn(const Mat& a, const Mat& b, Mat& out) {
  assert(a.cols == b.rows);
  out = Mat(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.data.data() + i * a.cols;
    double* orow = out.data.data() + i * out.cols;
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.data.data() + k * b.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aik * brow[j];
    }
  }
}

void gemm_nt(const Mat& a, const Mat& b, Mat& out) {
  assert(a.cols == b.cols);
  out = Mat(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = a.data.data() + i * a.cols;
    double* orow = out.data.data() + i * out.cols;
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* brow = b.data.data() + j * b.cols;
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      orow[j] = acc;
    }
  }
}

void gemm_tn(const Mat& a, const Mat& b, Mat& out) {
  assert(a.rows == b.rows);
  out = Mat(a.cols, b.cols);
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* arow = a.data.data() + k * a.cols;
    const double* brow = b.data.data() + k * b.cols;
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* orow = out.data.data() + i * out.cols;
      for (std::size_t j = 0; j < b.cols; ++j) orow[j] += aki * brow[j];
    }
  }
}

void axpy(double alpha, const Mat& x, Mat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  for (std::size_t i = 0; i < x.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

double global_norm(std::span<const Mat* const> mats) {
  double sq = 0.0;
  for (const Mat* m : mats)
    for (double v : m->data) sq += v * v;
  return std::sqrt(sq);
}

}  // namespace holo
