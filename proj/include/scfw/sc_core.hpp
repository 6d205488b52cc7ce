#pragma once

// Oracle contract for self-concordant objectives and the scalar/local-norm
// machinery built on it.

#include <cstddef>
#include <span>
#include <vector>

namespace scfw {

using Vector = std::vector<double>;

class FeasibleSet;

/**
 * Evaluation interface for a self-concordant function f with parameter M.
 *
 * value() returns +infinity outside dom f; gradient() and hess_vec() throw
 * DomainError there. Implementations are immutable after construction and may
 * be shared between threads.
 */
class ScOracle {
 public:
  virtual ~ScOracle() = default;

  virtual std::size_t dim() const = 0;
  /// Self-concordance parameter M.
  virtual double sc_parameter() const = 0;
  virtual bool in_domain(std::span<const double> x) const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;
  /// out = Hessian(x) * u, without forming the Hessian.
  virtual void hess_vec(std::span<const double> x, std::span<const double> u,
                        std::span<double> out) const = 0;
  /// <Hessian(x) u, u>. The default goes through hess_vec; GLM oracles override
  /// it with a cheaper sum of squares.
  virtual double hess_quad(std::span<const double> x, std::span<const double> u) const;

  Vector gradient(std::span<const double> x) const;
  Vector hess_vec(std::span<const double> x, std::span<const double> u) const;
};

/// omega(t) = t - ln(1 + t) for t > -1.
double omega(double t);
/// omega_*(t) = -t - ln(1 - t) for t < 1.
double omega_star(double t);

/// ||u||_x = sqrt(<Hessian(x) u, u>).
double local_norm(const ScOracle& f, std::span<const double> x, std::span<const double> u);

/// d(x, y) = (M/2) ||y - x||_x.
double dist_like(const ScOracle& f, std::span<const double> x, std::span<const double> y);

/// Bregman divergence f(y) - f(x) - <grad f(x), y - x>.
double bregman(const ScOracle& f, std::span<const double> y, std::span<const double> x);

struct GapResult {
  Vector target;       // s(x), the LMO answer at grad f(x)
  double gap = 0.0;    // <grad f(x), x - s(x)>
  double e = 0.0;      // (M/2) ||s(x) - x||_x
  double lmo_value = 0.0;  // <grad f(x), s(x)>
};

/// Round-off slack tolerated on a negative duality gap before it is reported
/// as an invariant violation.
inline constexpr double kGapSlack = 1e-12;

GapResult gap_and_target(const ScOracle& f, const FeasibleSet& set, std::span<const double> x);

/// Same as above with a precomputed gradient at x.
GapResult gap_and_target(const ScOracle& f, const FeasibleSet& set, std::span<const double> x,
                         std::span<const double> grad);

}  // namespace scfw
