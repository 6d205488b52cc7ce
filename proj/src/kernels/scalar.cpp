#include "scfw/kernels.hpp"

namespace scfw::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 double* out) {
  for (std::size_t i = 0; i < rows; ++i) out[i] = dot_scalar(a + i * cols, x, cols);
}

void gemv_t_scalar(const double* a, std::size_t rows, std::size_t cols, const double* w,
                   double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(w[i], a + i * cols, out, cols);
}

constexpr KernelTable kScalar{Backend::scalar, dot_scalar,  sum_sq_scalar,
                              axpy_scalar,     gemv_scalar, gemv_t_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace scfw::kernels
