#include "scfw/sc_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/feasible_sets.hpp"
#include "scfw/kernels.hpp"

namespace scfw {

namespace {

// Below this magnitude the direct formulas lose most of their digits to
// cancellation; a six-term series is exact to double precision there.
constexpr double kSeriesCutoff = 1e-4;

// sum_{j=2}^{7} (-1)^j t^j / j, i.e. t - ln(1+t) expanded at 0.
double omega_series(double t) {
  double term = t * t;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 2; j <= 7; ++j) {
    sum += sign * term / j;
    term *= t;
    sign = -sign;
  }
  return sum;
}

}  // namespace

double ScOracle::hess_quad(std::span<const double> x, std::span<const double> u) const {
  Vector hu(u.size());
  hess_vec(x, u, hu);
  return kernels::dot(hu, u);
}

Vector ScOracle::gradient(std::span<const double> x) const {
  Vector g(dim());
  gradient(x, g);
  return g;
}

Vector ScOracle::hess_vec(std::span<const double> x, std::span<const double> u) const {
  Vector out(dim());
  hess_vec(x, u, out);
  return out;
}

double omega(double t) {
  if (!(t > -1.0)) throw DomainError("omega: argument must exceed -1");
  if (std::abs(t) < kSeriesCutoff) return omega_series(t);
  return t - std::log1p(t);
}

double omega_star(double t) {
  if (!(t < 1.0)) throw DomainError("omega_star: argument must be below 1");
  // omega_*(t) = omega(-t).
  if (std::abs(t) < kSeriesCutoff) return omega_series(-t);
  return -t - std::log1p(-t);
}

double local_norm(const ScOracle& f, std::span<const double> x, std::span<const double> u) {
  if (!f.in_domain(x)) throw DomainError("local_norm: x is outside dom f");
  const double q = f.hess_quad(x, u);
  if (q < 0.0) {
    // Tiny negative values are round-off in a sum of squares.
    const double scale = 1e-14 * (1.0 + kernels::sum_sq(u));
    if (q < -scale)
      throw InvariantError("local_norm: negative curvature " + std::to_string(q));
    return 0.0;
  }
  return std::sqrt(q);
}

double dist_like(const ScOracle& f, std::span<const double> x, std::span<const double> y) {
  Vector diff(y.begin(), y.end());
  kernels::axpy(-1.0, x, diff);
  return 0.5 * f.sc_parameter() * local_norm(f, x, diff);
}

double bregman(const ScOracle& f, std::span<const double> y, std::span<const double> x) {
  if (!f.in_domain(x) || !f.in_domain(y)) throw DomainError("bregman: point outside dom f");
  Vector diff(y.begin(), y.end());
  kernels::axpy(-1.0, x, diff);
  const Vector g = f.gradient(x);
  return f.value(y) - f.value(x) - kernels::dot(g, diff);
}

GapResult gap_and_target(const ScOracle& f, const FeasibleSet& set, std::span<const double> x) {
  if (!f.in_domain(x)) throw PreconditionError("gap_and_target: x is outside dom f");
  const Vector g = f.gradient(x);
  return gap_and_target(f, set, x, g);
}

GapResult gap_and_target(const ScOracle& f, const FeasibleSet& set, std::span<const double> x,
                         std::span<const double> grad) {
  if (!set.contains(x)) throw PreconditionError("gap_and_target: x is infeasible");
  if (!f.in_domain(x)) throw PreconditionError("gap_and_target: x is outside dom f");
  GapResult r;
  r.target = set.lmo(grad);
  r.lmo_value = kernels::dot(grad, r.target);
  const double raw = kernels::dot(grad, x) - r.lmo_value;
  // Slack scales with the magnitude of the inner products being differenced.
  if (raw < -kGapSlack * std::max(1.0, std::abs(r.lmo_value)))
    throw InvariantError("negative duality gap " + std::to_string(raw) +
                         "; the LMO did not return a minimizer");
  r.gap = std::max(raw, 0.0);
  r.e = dist_like(f, x, r.target);
  return r;
}

}  // namespace scfw
