#pragma once

// Dense inner-loop kernels used by every oracle and solver.
//
// Each kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The backend is chosen once at first use from the CPU
// feature flags; SCFW_KERNELS=scalar|avx2 in the environment overrides the
// choice. Results of the two backends agree up to summation-order round-off.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace scfw {

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

namespace kernels {

enum class Backend { scalar, avx2 };

/// Function table implemented once per backend.
struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// out[i] = <row_i(A), x> for a rows x cols row-major A.
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x,
               double* out);
  /// out = sum_i w[i] * row_i(A); out is overwritten.
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* w,
                 double* out);
};

const KernelTable& scalar_table();
#if defined(SCFW_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

/// True if `b` was compiled in and the running CPU supports it.
bool backend_available(Backend b);

/// Currently active backend table.
const KernelTable& active();

/// Forces a backend; throws InputError if it is unavailable. Intended for tests
/// and benchmarking.
void set_backend(Backend b);

std::string_view backend_name(Backend b);

// Convenience wrappers over the active table.

double dot(std::span<const double> a, std::span<const double> b);
double sum_sq(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> out);
void gemv_t(const DenseMatrix& a, std::span<const double> w, std::span<double> out);

}  // namespace kernels
}  // namespace scfw
