#include "scfw/lloo_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scfw/errors.hpp"
#include "scfw/feasible_sets.hpp"

namespace scfw {

LlooResult lloo_simplex(std::span<const double> x, double radius, std::span<const double> c) {
  const std::size_t n = x.size();
  if (c.size() != n) throw InputError("lloo: dimension mismatch");
  if (!(radius > 0.0)) throw PreconditionError("lloo: radius must be positive");
  for (double v : c)
    if (!std::isfinite(v)) throw InputError("lloo: cost vector has a non-finite entry");
  if (n == 0 || !Simplex(n).contains(x)) throw PreconditionError("lloo: x is not on the simplex");

  const double d = std::sqrt(static_cast<double>(n)) * radius;
  const double m = std::min(d / 2.0, 1.0);

  std::size_t target = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (c[i] < c[target]) target = i;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });

  // Mass removed from the donors: whole coordinates until the running sum
  // reaches m, then the remainder from the k-th donor.
  Vector removed(n, 0.0);
  double taken = 0.0;
  for (std::size_t idx : order) {
    if (taken + x[idx] >= m) {
      removed[idx] = m - taken;
      taken = m;
      break;
    }
    removed[idx] = x[idx];
    taken += x[idx];
  }
  // Only reachable when sum(x) < m through round-off; the remainder is dropped.

  LlooResult out;
  out.point.assign(x.begin(), x.end());
  out.point[target] += m;
  for (std::size_t i = 0; i < n; ++i) {
    out.point[i] -= removed[i];
    // Partial removal can leave -1e-17 style residue.
    if (out.point[i] < 0.0) out.point[i] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) out.l1_moved += std::abs(x[i] - out.point[i]);
  return out;
}

}  // namespace scfw
