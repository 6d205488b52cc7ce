#include <doctest.h>

#include <cmath>
#include <random>

#include "scfw/kernels.hpp"
#include "test_support.hpp"

using namespace scfw;
using scfw::kernels::Backend;

namespace {

// Restores the backend that was active when the test started.
struct BackendGuard {
  Backend saved = kernels::active().backend;
  ~BackendGuard() { kernels::set_backend(saved); }
};

double abs_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
  return s;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::backend_available(Backend::scalar));
  BackendGuard guard;
  kernels::set_backend(Backend::scalar);
  CHECK(kernels::active().backend == Backend::scalar);
  CHECK(kernels::backend_name(Backend::scalar) == "scalar");
}

TEST_CASE("scalar kernels on small hand-checked inputs") {
  const auto& t = kernels::scalar_table();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(t.dot(a, b, 3) == 12.0);
  CHECK(t.sum_sq(a, 3) == 14.0);
  double y[] = {1, 1, 1};
  t.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);

  // [[1 2 3], [4 -5 6]]
  DenseMatrix m(2, 3);
  m.data = {1, 2, 3, 4, -5, 6};
  double out[2];
  const double x[] = {1, 0, -1};
  t.gemv(m.data.data(), 2, 3, x, out);
  CHECK(out[0] == -2.0);
  CHECK(out[1] == -2.0);
  double outt[3];
  const double w[] = {1, 2};
  t.gemv_t(m.data.data(), 2, 3, w, outt);
  CHECK(outt[0] == 9.0);
  CHECK(outt[1] == -8.0);
  CHECK(outt[2] == 15.0);
}

TEST_CASE("empty inputs") {
  const auto& t = kernels::scalar_table();
  CHECK(t.dot(nullptr, nullptr, 0) == 0.0);
  CHECK(t.sum_sq(nullptr, 0) == 0.0);
}

#if defined(SCFW_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference") {
  if (!kernels::backend_available(Backend::avx2)) {
    MESSAGE("CPU lacks AVX2/FMA; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar_table();
  const auto& simd = kernels::avx2_table();
  std::mt19937_64 rng(11);
  // Sizes cover every tail length of the 16-, 8- and 4-wide loops.
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = testing::random_vector(rng, n, -3, 3);
    const auto b = testing::random_vector(rng, n, -3, 3);
    const double tol = 1e-14 * (1.0 + abs_dot(a, b));
    CHECK(std::abs(ref.dot(a.data(), b.data(), n) - simd.dot(a.data(), b.data(), n)) <= tol);
    CHECK(std::abs(ref.sum_sq(a.data(), n) - simd.sum_sq(a.data(), n)) <=
          1e-14 * (1.0 + abs_dot(a, a)));

    auto y1 = b;
    auto y2 = b;
    ref.axpy(0.37, a.data(), y1.data(), n);
    simd.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (1 + std::abs(y1[i])));
  }

  for (std::size_t rows : {1u, 3u, 17u}) {
    for (std::size_t cols : {1u, 5u, 20u, 33u}) {
      DenseMatrix m(rows, cols);
      m.data = testing::random_vector(rng, rows * cols, -2, 2);
      const auto x = testing::random_vector(rng, cols);
      const auto w = testing::random_vector(rng, rows);
      std::vector<double> o1(rows), o2(rows), t1(cols), t2(cols);
      ref.gemv(m.data.data(), rows, cols, x.data(), o1.data());
      simd.gemv(m.data.data(), rows, cols, x.data(), o2.data());
      for (std::size_t i = 0; i < rows; ++i) CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-13));
      ref.gemv_t(m.data.data(), rows, cols, w.data(), t1.data());
      simd.gemv_t(m.data.data(), rows, cols, w.data(), t2.data());
      for (std::size_t j = 0; j < cols; ++j) CHECK(std::abs(t1[j] - t2[j]) <= 1e-13 * (1 + std::abs(t1[j])));
    }
  }
}

TEST_CASE("set_backend switches the active table") {
  if (!kernels::backend_available(Backend::avx2)) return;
  BackendGuard guard;
  kernels::set_backend(Backend::avx2);
  CHECK(kernels::active().backend == Backend::avx2);
  const std::vector<double> a{1, 2, 3, 4, 5};
  CHECK(kernels::dot(a, a) == 55.0);
}
#endif
