#pragma once

// Shared generators and independent reference computations for the tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "scfw/sc_core.hpp"

namespace scfw::testing {

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline std::vector<double> random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  double s = 0.0;
  for (double& x : v) {
    x = z(rng);
    s += x * x;
  }
  for (double& x : v) x /= std::sqrt(s);
  return v;
}

/// Uniform point on the unit simplex (normalized exponentials).
inline std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (double& x : v) {
    x = ex(rng);
    s += x;
  }
  for (double& x : v) x /= s;
  return v;
}

inline double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(inner(a, a)); }

inline std::vector<double> sub(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline std::vector<double> add_scaled(std::span<const double> a, double t,
                                      std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += t * b[i];
  return out;
}

/// Central finite-difference gradient of value().
inline std::vector<double> fd_gradient(const ScOracle& f, std::span<const double> x, double h) {
  std::vector<double> g(x.size());
  std::vector<double> xp(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    const double fp = f.value(xp);
    xp[i] = xi - h;
    const double fm = f.value(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace scfw::testing
