// Minimal row-major dense matrix plus the handful of BLAS-like kernels the
// library needs. Values are always double; shapes are checked with asserts.
#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace holo {

struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) {
    assert(r < rows && c < cols);
    return data[r * cols + c];
  }
  double at(std::size_t r, std::size_t c) const {
    assert(r < rows && c < cols);
    return data[r * cols + c];
  }

  std::span<double> row(std::size_t r) {
    assert(r < rows);
    return {data.data() + r * cols, cols};
  }
  std::span<const double> row(std::size_t r) const {
    assert(r < rows);
    return {data.data() + r * cols, cols};
  }

  std::size_t size() const { return data.size(); }
  void fill(double v) { data.assign(data.size(), v); }
};

/// out = A * B. Shapes: (m x k) * (k x n) -> (m x n).
void gemm_nn(const Mat& a, const Mat& b, Mat& out);

/// out = A * B^T. Shapes: (m x k) * (n x k)^T -> (m x n).
void gemm_nt(const Mat& a, const Mat& b, Mat& out);

/// out = A^T * B. Shapes: (k x m)^T * (k x n) -> (m x n).
void gemm_tn(const Mat& a, const Mat& b, Mat& out);

/// y += alpha * x over whole buffers.
void axpy(double alpha, const Mat& x, Mat& y);

/// Euclidean norm of all entries across several matrices.
double global_norm(std::span<const Mat* const> mats);

}  // namespace holo
