#pragma once

// Step-size rules for Frank-Wolfe on self-concordant objectives.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "scfw/sc_core.hpp"

namespace scfw {

struct StepResult {
  double alpha = 0.0;
  std::optional<double> lipschitz;  // accepted mu (backtracking only)
  std::size_t evals_used = 0;
  double model_decrease = 0.0;      // Delta_k of the analytic rule
  std::optional<double> f_new;      // f(x + alpha v) when the rule evaluated it
};

/// Mutable per-run state of the backtracking rule.
struct BacktrackState {
  double lipschitz = 1.0;  // L_k, the last accepted mu
  double gamma_u = 2.0;
  double gamma_d = 0.9;
  std::size_t eval_count = 0;           // N_k
  std::optional<double> prev_decrease;  // f(x^{k-1}) - f(x^k)
};

inline constexpr int kMaxBacktrackDoublings = 100;

/// 2 / (k + 2).
double standard_step(std::size_t k);

/**
 * Analytic step that maximizes alpha*gap - (4/M^2) omega_*(alpha*e):
 * alpha = min{1, gap / (e (gap + (4/M^2) e))}. Always alpha * e < 1.
 */
StepResult v1_step(double gap, double e, double M);

/// Golden-section minimizer of a unimodal phi on [lo, hi] down to width `tol`.
/// Returns the best probe seen, including the endpoints.
double golden_section_minimize(const std::function<double(double)>& phi, double lo, double hi,
                               double tol);

/**
 * argmin over t in [0, t_max] of f(x + t v), t_max = min{1, 0.99 / e}
 * (t_max = 1 when e = 0). Probes outside dom f count as +infinity.
 * Returns 0 if no probe improves on f(x).
 */
double exact_line_search(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                         double e);

/**
 * Backtracking from a given starting mu: shrink alpha = min{gap/(mu ||v||^2), 1}
 * by multiplying mu with gamma_u until
 *   f(x + alpha v) <= f(x) - alpha gap + alpha^2 mu ||v||^2 / 2
 * holds with x + alpha v in dom f. Each test counts as one evaluation.
 */
StepResult backtrack_from(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                          double gap, double fx, double mu, double gamma_u);

/**
 * One adaptive-Lipschitz step. The initial mu is the clipped estimate
 * gap^2 / (2 prev_decrease ||v||^2) on [gamma_d L, L], or gamma_d L without
 * a previous decrease. Updates state.lipschitz and state.eval_count; the
 * caller owns prev_decrease.
 */
StepResult backtrack_step(const ScOracle& f, std::span<const double> x, std::span<const double> v,
                          double gap, double fx, BacktrackState& state);

/// Initial Lipschitz estimate ||grad f(x0) - grad f(x0 + eps v)|| / (eps ||v||)
/// with v = s0 - x0 and eps = 1e-3 (halved until the probe is in dom f).
double init_lipschitz(const ScOracle& f, std::span<const double> x0, std::span<const double> s0);

}  // namespace scfw
