#pragma once

// Frank-Wolfe drivers: the adaptive method with a pluggable step rule, and the
// linearly convergent variant driven by a local linear minimization oracle on
// the simplex.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scfw/feasible_sets.hpp"
#include "scfw/sc_core.hpp"

namespace scfw {

enum class StepRule { standard, line_search, v1, v2 };

enum class Termination {
  gap_below_eps,
  max_iter,
  stalled,
  left_domain,  // an unguarded step produced an iterate outside dom f
};

std::string_view to_string(StepRule r);
std::string_view to_string(Termination t);
/// Accepts "standard", "line_search" (or "line"), "v1", "v2".
StepRule parse_step_rule(std::string_view s);

/// Called with (k, x^k) for every iterate the solver visits, including the last.
using IterateObserver = std::function<void(std::size_t, std::span<const double>)>;

struct RunConfig {
  double epsilon = 1e-10;
  std::size_t max_iter = 50000;
  StepRule rule = StepRule::v1;
  bool record_times = true;
  std::uint64_t seed = 0;
  double gamma_u = 2.0;
  double gamma_d = 0.9;
  /// Slack on the per-iteration descent check of the analytic rules.
  double descent_slack = 1e-9;
  IterateObserver observer;
};

struct IterationRecord {
  std::size_t k = 0;
  double f = 0.0;      // f(x^k)
  double gap = 0.0;    // gap(x^k)
  double alpha = 0.0;  // step taken from x^k; 0 on the terminal record
  double e = 0.0;      // (M/2) ||s^k - x^k||_{x^k}
  std::optional<double> lipschitz;  // accepted mu (V2)
  std::int64_t time_ns = 0;         // elapsed since the run started
  double model_decrease = 0.0;      // guaranteed decrease (V1, LLOO)
  std::size_t evals = 0;            // sufficient-decrease tests this iteration (V2)
  std::optional<double> radius;       // r_k (LLOO)
  std::optional<double> contraction;  // c_k (LLOO)
};

struct RunTrace {
  std::string method;
  std::vector<IterationRecord> iterations;
  Vector final_x;
  Termination termination = Termination::max_iter;
  std::optional<double> initial_lipschitz;  // L_{-1} (V2)
  std::size_t eval_count = 0;               // N_k at the end (V2)
};

/// Which LLOO radius schedule to use. The convergence proof needs
/// r_k^2 = r_0^2 c_k; the linear form r_k = r_0 c_k is kept for comparison.
enum class RadiusSchedule { sqrt_contraction, linear_contraction };

struct LlooConfig {
  double sigma_f = 0.0;  // strong-convexity parameter on the level set
  double rho = 0.0;      // LLOO parameter; 0 selects sqrt(n)
  RadiusSchedule schedule = RadiusSchedule::sqrt_contraction;
};

/// Adaptive Frank-Wolfe from set.start_point().
RunTrace fw_solve(const ScOracle& f, const FeasibleSet& set, const RunConfig& config);
/// Adaptive Frank-Wolfe from an explicit start point.
RunTrace fw_solve(const ScOracle& f, const FeasibleSet& set, const RunConfig& config,
                  std::span<const double> x0);

/// LLOO-based Frank-Wolfe over the unit simplex, started at its barycenter.
RunTrace lloo_fw_solve(const ScOracle& f, const RunConfig& config, const LlooConfig& lconfig);
RunTrace lloo_fw_solve(const ScOracle& f, const RunConfig& config, const LlooConfig& lconfig,
                       std::span<const double> x0);

/// max_k (f_k - gap_k), a lower bound on the optimal value.
double certificate_lower_bound(const RunTrace& trace);

/**
 * Heuristic strong-convexity estimate: the smallest Hessian eigenvalue at x,
 * from 30 steps of inverse power iteration (inner solves by conjugate
 * gradients on hess_vec). This is the curvature at x only, not a bound over
 * the level set.
 */
double estimate_sigma(const ScOracle& f, std::span<const double> x, int iterations = 30);

}  // namespace scfw
