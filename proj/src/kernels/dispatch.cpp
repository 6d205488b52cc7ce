#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/kernels.hpp"

namespace scfw::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SCFW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for([[maybe_unused]] Backend b) {
#if defined(SCFW_HAVE_AVX2)
  if (b == Backend::avx2) return avx2_table();
#endif
  return scalar_table();
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("SCFW_KERNELS")) {
    const std::string choice(env);
    if (choice == "scalar") return &scalar_table();
    if (choice == "avx2" && cpu_has_avx2()) return &table_for(Backend::avx2);
  }
  return cpu_has_avx2() ? &table_for(Backend::avx2) : &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

bool backend_available(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void set_backend(Backend b) {
  if (!backend_available(b))
    throw InputError("kernel backend '" + std::string(backend_name(b)) +
                     "' is not available on this machine");
  current().store(&table_for(b), std::memory_order_release);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double sum_sq(std::span<const double> a) { return active().sum_sq(a.data(), a.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> out) {
  assert(x.size() == a.cols && out.size() == a.rows);
  active().gemv(a.data.data(), a.rows, a.cols, x.data(), out.data());
}

void gemv_t(const DenseMatrix& a, std::span<const double> w, std::span<double> out) {
  assert(w.size() == a.rows && out.size() == a.cols);
  active().gemv_t(a.data.data(), a.rows, a.cols, w.data(), out.data());
}

}  // namespace scfw::kernels
