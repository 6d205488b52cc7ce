#include "scfw/step_policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/kernels.hpp"

namespace scfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double value_along(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                   double t, Vector& scratch) {
  std::copy(x.begin(), x.end(), scratch.begin());
  kernels::axpy(t, v, scratch);
  if (!f.in_domain(scratch)) return kInf;
  return f.value(scratch);
}

}  // namespace

double standard_step(std::size_t k) { return 2.0 / (static_cast<double>(k) + 2.0); }

StepResult v1_step(double gap, double e, double M) {
  if (!(gap > 0.0)) throw PreconditionError("v1_step: gap must be positive");
  if (!(e >= 0.0)) throw PreconditionError("v1_step: e must be nonnegative");
  StepResult r;
  const double k4 = 4.0 / (M * M);
  if (e == 0.0) {
    r.alpha = 1.0;
    r.model_decrease = gap;
    return r;
  }
  const double t = gap / (e * (gap + k4 * e));
  r.alpha = std::min(1.0, t);
  if (!(r.alpha * e < 1.0))
    throw InvariantError("v1_step: alpha * e = " + std::to_string(r.alpha * e) + " >= 1");
  r.model_decrease = r.alpha * gap - k4 * omega_star(r.alpha * e);
  return r;
}

double golden_section_minimize(const std::function<double(double)>& phi, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best_t = lo;
  double best_v = phi(lo);
  const double v_hi = phi(hi);
  if (v_hi < best_v) {
    best_t = hi;
    best_v = v_hi;
  }
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
  }
  const double mid = 0.5 * (a + b);
  for (auto [t, v] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{mid, phi(mid)}}) {
    if (v < best_v) {
      best_t = t;
      best_v = v;
    }
  }
  return best_t;
}

double exact_line_search(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                         double e) {
  const double t_max = e > 0.0 ? std::min(1.0, 0.99 / e) : 1.0;
  Vector scratch(x.size());
  return golden_section_minimize(
      [&](double t) { return value_along(f, x, v, t, scratch); }, 0.0, t_max, 1e-10);
}

StepResult backtrack_from(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                          double gap, double fx, double mu, double gamma_u) {
  if (!(gap > 0.0)) throw PreconditionError("backtrack: gap must be positive");
  if (!(mu > 0.0)) throw PreconditionError("backtrack: mu must be positive");
  const double v2 = kernels::sum_sq(v);
  if (!(v2 > 0.0)) throw PreconditionError("backtrack: zero search direction");

  Vector scratch(x.size());
  StepResult r;
  for (int doublings = 0;; ++doublings) {
    const double alpha = std::min(gap / (mu * v2), 1.0);
    const double f_new = value_along(f, x, v, alpha, scratch);
    ++r.evals_used;
    const double q = fx - alpha * gap + 0.5 * alpha * alpha * mu * v2;
    if (f_new <= q) {
      r.alpha = alpha;
      r.lipschitz = mu;
      r.f_new = f_new;
      return r;
    }
    if (doublings == kMaxBacktrackDoublings)
      throw NonterminationError("backtracking did not find sufficient decrease after " +
                                std::to_string(kMaxBacktrackDoublings) + " doublings");
    mu *= gamma_u;
  }
}

StepResult backtrack_step(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                          double gap, double fx, BacktrackState& state) {
  const double hi = state.lipschitz;
  const double lo = state.gamma_d * hi;
  double mu = lo;
  if (state.prev_decrease && *state.prev_decrease > 0.0) {
    const double v2 = kernels::sum_sq(v);
    mu = std::clamp(gap * gap / (2.0 * *state.prev_decrease * v2), lo, hi);
  }
  StepResult r = backtrack_from(f, x, v, gap, fx, mu, state.gamma_u);
  state.lipschitz = *r.lipschitz;
  state.eval_count += r.evals_used;
  return r;
}

double init_lipschitz(const ScOracle& f, std::span<const double> x0, std::span<const double> s0) {
  Vector v(s0.begin(), s0.end());
  kernels::axpy(-1.0, x0, v);
  const double vnorm = std::sqrt(kernels::sum_sq(v));
  if (!(vnorm > 0.0)) throw PreconditionError("init_lipschitz: s0 equals x0");

  double eps = 1e-3;
  Vector probe(x0.size());
  for (int halvings = 0;; ++halvings) {
    std::copy(x0.begin(), x0.end(), probe.begin());
    kernels::axpy(eps, v, probe);
    if (f.in_domain(probe)) break;
    if (halvings == 60) throw DomainError("init_lipschitz: no probe point inside dom f");
    eps *= 0.5;
  }
  Vector diff = f.gradient(x0);
  kernels::axpy(-1.0, f.gradient(probe), diff);
  return std::sqrt(kernels::sum_sq(diff)) / (eps * vnorm);
}

}  // namespace scfw
