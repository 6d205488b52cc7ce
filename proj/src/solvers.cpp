#include "scfw/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/kernels.hpp"
#include "scfw/lloo_simplex.hpp"
#include "scfw/step_policies.hpp"

namespace scfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStallAlpha = 1e-16;
constexpr int kStallWindow = 10;

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(Clock::now()) {}
  std::int64_t elapsed_ns() const {
    if (!enabled_) return 0;
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  bool enabled_;
  Clock::time_point start_;
};

void require_start(const ScOracle& f, const FeasibleSet& set, std::span<const double> x0) {
  if (x0.size() != f.dim() || set.dim() != f.dim())
    throw PreconditionError("start point, oracle and set dimensions differ");
  if (!set.contains(x0)) throw PreconditionError("start point is not in the feasible set");
  if (!f.in_domain(x0)) throw PreconditionError("start point is outside dom f");
}

void require_config(const RunConfig& c) {
  if (!(c.epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (c.max_iter < 1) throw PreconditionError("max_iter must be at least 1");
}

double value_or_inf(const ScOracle& f, std::span<const double> x) {
  return f.in_domain(x) ? f.value(x) : kInf;
}

}  // namespace

std::string_view to_string(StepRule r) {
  switch (r) {
    case StepRule::standard:
      return "standard";
    case StepRule::line_search:
      return "line_search";
    case StepRule::v1:
      return "v1";
    case StepRule::v2:
      return "v2";
  }
  return "unknown";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::gap_below_eps:
      return "gap_below_eps";
    case Termination::max_iter:
      return "max_iter";
    case Termination::stalled:
      return "stalled";
    case Termination::left_domain:
      return "left_domain";
  }
  return "unknown";
}

StepRule parse_step_rule(std::string_view s) {
  if (s == "standard") return StepRule::standard;
  if (s == "line_search" || s == "line") return StepRule::line_search;
  if (s == "v1") return StepRule::v1;
  if (s == "v2") return StepRule::v2;
  throw InputError("unknown step rule '" + std::string(s) + "'");
}

RunTrace fw_solve(const ScOracle& f, const FeasibleSet& set, const RunConfig& config) {
  const Vector x0 = set.start_point();
  return fw_solve(f, set, config, x0);
}

RunTrace fw_solve(const ScOracle& f, const FeasibleSet& set, const RunConfig& config,
                  std::span<const double> x0) {
  require_config(config);
  require_start(f, set, x0);
  const bool guarded = config.rule == StepRule::v1 || config.rule == StepRule::v2;

  RunTrace trace;
  trace.method = std::string(to_string(config.rule));
  Vector x(x0.begin(), x0.end());
  Vector grad(x.size());
  Vector v(x.size());
  double fx = f.value(x);

  BacktrackState bt;
  bt.gamma_u = config.gamma_u;
  bt.gamma_d = config.gamma_d;
  int small_steps = 0;
  Stopwatch clock(config.record_times);

  for (std::size_t k = 0;; ++k) {
    if (config.observer) config.observer(k, x);
    f.gradient(x, grad);
    GapResult gr = gap_and_target(f, set, x, grad);

    IterationRecord rec;
    rec.k = k;
    rec.f = fx;
    rec.gap = gr.gap;
    rec.e = gr.e;

    if (gr.gap <= config.epsilon || k == config.max_iter) {
      trace.termination =
          gr.gap <= config.epsilon ? Termination::gap_below_eps : Termination::max_iter;
      rec.time_ns = clock.elapsed_ns();
      trace.iterations.push_back(rec);
      break;
    }

    std::copy(gr.target.begin(), gr.target.end(), v.begin());
    kernels::axpy(-1.0, x, v);

    std::optional<double> f_new;
    switch (config.rule) {
      case StepRule::standard:
        rec.alpha = standard_step(k);
        break;
      case StepRule::line_search:
        rec.alpha = exact_line_search(f, x, v, gr.e);
        break;
      case StepRule::v1: {
        const StepResult sr = v1_step(gr.gap, gr.e, f.sc_parameter());
        rec.alpha = sr.alpha;
        rec.model_decrease = sr.model_decrease;
        break;
      }
      case StepRule::v2: {
        if (k == 0) {
          const double l0 = init_lipschitz(f, x, gr.target);
          bt.lipschitz = std::max(l0, 1e-12);
          trace.initial_lipschitz = bt.lipschitz;
        }
        const StepResult sr = backtrack_step(f, x, v, gr.gap, fx, bt);
        rec.alpha = sr.alpha;
        rec.lipschitz = sr.lipschitz;
        rec.evals = sr.evals_used;
        f_new = sr.f_new;
        break;
      }
    }

    kernels::axpy(rec.alpha, v, x);
    const double fn = f_new ? *f_new : value_or_inf(f, x);
    rec.time_ns = clock.elapsed_ns();
    trace.iterations.push_back(rec);

    if (!std::isfinite(fn)) {
      if (guarded) throw InvariantError("guarded step left dom f at iteration " + std::to_string(k));
      trace.termination = Termination::left_domain;
      if (config.observer) config.observer(k + 1, x);
      break;
    }
    if (guarded && !set.contains(x))
      throw InvariantError("iterate left the feasible set at iteration " + std::to_string(k));
    if (config.rule == StepRule::v1 && fn > fx - rec.model_decrease + config.descent_slack)
      throw InvariantError("V1 descent violated at iteration " + std::to_string(k));
    if (config.rule == StepRule::v2) bt.prev_decrease = fx - fn;

    small_steps = rec.alpha < kStallAlpha ? small_steps + 1 : 0;
    fx = fn;
    if (small_steps >= kStallWindow) {
      trace.termination = Termination::stalled;
      // Record the state the run stopped at.
      IterationRecord last;
      last.k = k + 1;
      last.f = fx;
      f.gradient(x, grad);
      const GapResult g2 = gap_and_target(f, set, x, grad);
      last.gap = g2.gap;
      last.e = g2.e;
      last.time_ns = clock.elapsed_ns();
      trace.iterations.push_back(last);
      if (config.observer) config.observer(k + 1, x);
      break;
    }
  }
  trace.final_x = std::move(x);
  trace.eval_count = bt.eval_count;
  return trace;
}

RunTrace lloo_fw_solve(const ScOracle& f, const RunConfig& config, const LlooConfig& lconfig) {
  const Vector x0 = Simplex(f.dim()).start_point();
  return lloo_fw_solve(f, config, lconfig, x0);
}

RunTrace lloo_fw_solve(const ScOracle& f, const RunConfig& config, const LlooConfig& lconfig,
                       std::span<const double> x0) {
  require_config(config);
  if (!(lconfig.sigma_f > 0.0)) throw PreconditionError("sigma_f must be positive");
  const std::size_t n = f.dim();
  const double rho = lconfig.rho > 0.0 ? lconfig.rho : std::sqrt(static_cast<double>(n));
  if (rho < 1.0) throw PreconditionError("rho must be at least 1");
  const Simplex set(n);
  require_start(f, set, x0);

  RunTrace trace;
  trace.method = "lloo";
  Vector x(x0.begin(), x0.end());
  Vector grad(n);
  Vector v(n);
  double fx = f.value(x);
  const double k4 = 4.0 / (f.sc_parameter() * f.sc_parameter());

  double gap0 = 0.0;
  double r0 = 0.0;
  double alpha_sum = 0.0;
  int small_steps = 0;
  Stopwatch clock(config.record_times);

  for (std::size_t k = 0;; ++k) {
    if (config.observer) config.observer(k, x);
    f.gradient(x, grad);
    const GapResult gr = gap_and_target(f, set, x, grad);
    if (k == 0) {
      gap0 = gr.gap;
      r0 = std::sqrt(6.0 * gap0 / lconfig.sigma_f);
    }

    IterationRecord rec;
    rec.k = k;
    rec.f = fx;
    rec.gap = gr.gap;

    const double c_k = std::exp(-0.5 * alpha_sum);
    const double r_k =
        lconfig.schedule == RadiusSchedule::sqrt_contraction ? r0 * std::sqrt(c_k) : r0 * c_k;
    rec.contraction = c_k;
    rec.radius = r_k;

    if (gr.gap <= config.epsilon || k == config.max_iter || !(r_k > 0.0)) {
      trace.termination = gr.gap <= config.epsilon ? Termination::gap_below_eps
                          : k == config.max_iter   ? Termination::max_iter
                                                   : Termination::stalled;
      rec.e = gr.e;
      rec.time_ns = clock.elapsed_ns();
      trace.iterations.push_back(rec);
      break;
    }

    const LlooResult step = lloo_simplex(x, r_k, grad);
    std::copy(step.point.begin(), step.point.end(), v.begin());
    kernels::axpy(-1.0, x, v);
    const double e = dist_like(f, x, step.point);
    const double slope = kernels::dot(grad, v);  // <= 0: x itself is a candidate
    double alpha = 1.0;
    if (e > 0.0) alpha = std::min(c_k * gap0 / (k4 * e * e), 1.0) / (1.0 + e);
    rec.e = e;
    rec.alpha = alpha;
    rec.model_decrease = -alpha * slope - k4 * omega_star(alpha * e);

    kernels::axpy(alpha, v, x);
    const double fn = value_or_inf(f, x);
    rec.time_ns = clock.elapsed_ns();
    trace.iterations.push_back(rec);

    if (!std::isfinite(fn))
      throw InvariantError("LLOO step left dom f at iteration " + std::to_string(k));
    if (!set.contains(x))
      throw InvariantError("LLOO iterate left the simplex at iteration " + std::to_string(k));
    // Upper self-concordance bound along the step.
    if (fn > fx - rec.model_decrease + config.descent_slack)
      throw InvariantError("LLOO step violates the self-concordant upper bound at iteration " +
                           std::to_string(k));

    alpha_sum += alpha;
    fx = fn;
    small_steps = alpha < kStallAlpha ? small_steps + 1 : 0;
    if (small_steps >= kStallWindow) {
      trace.termination = Termination::stalled;
      if (config.observer) config.observer(k + 1, x);
      break;
    }
  }
  trace.final_x = std::move(x);
  return trace;
}

double certificate_lower_bound(const RunTrace& trace) {
  if (trace.iterations.empty()) throw PreconditionError("certificate_lower_bound: empty trace");
  double best = -kInf;
  for (const auto& rec : trace.iterations) best = std::max(best, rec.f - rec.gap);
  return best;
}

namespace {

// Solves H z = b by conjugate gradients using only Hessian-vector products.
Vector cg_solve(const ScOracle& f, std::span<const double> x, std::span<const double> b) {
  const std::size_t n = b.size();
  Vector z(n, 0.0);
  Vector r(b.begin(), b.end());
  Vector p = r;
  Vector hp(n);
  double rr = kernels::sum_sq(r);
  const double stop = 1e-28 * std::max(rr, 1e-300);
  for (std::size_t it = 0; it < 10 * n + 10 && rr > stop; ++it) {
    f.hess_vec(x, p, hp);
    const double php = kernels::dot(p, hp);
    if (!(php > 0.0)) break;
    const double a = rr / php;
    kernels::axpy(a, p, z);
    kernels::axpy(-a, hp, r);
    const double rr_new = kernels::sum_sq(r);
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
  }
  return z;
}

}  // namespace

double estimate_sigma(const ScOracle& f, std::span<const double> x, int iterations) {
  if (!f.in_domain(x)) throw DomainError("estimate_sigma: x is outside dom f");
  const std::size_t n = f.dim();
  Vector z(n);
  // Deterministic start with components along every coordinate.
  for (std::size_t i = 0; i < n; ++i) z[i] = 1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i));
  auto normalize = [](Vector& w) {
    const double nrm = std::sqrt(kernels::sum_sq(w));
    if (!(nrm > 0.0)) throw InvariantError("estimate_sigma: power iteration collapsed");
    for (double& c : w) c /= nrm;
  };
  normalize(z);
  for (int it = 0; it < iterations; ++it) {
    z = cg_solve(f, x, z);
    normalize(z);
  }
  return f.hess_quad(x, z);
}

}  // namespace scfw
