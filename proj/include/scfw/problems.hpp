#pragma once

// Benchmark objectives. Every oracle is a generalized linear model, so
// gradients and Hessian-vector products reduce to one or two passes of
// gemv/gemv_t over the data matrix.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "scfw/kernels.hpp"
#include "scfw/sc_core.hpp"

namespace scfw {

/// f(x) = -sum_t ln(r_t^T x) with the price ratios r_t as rows; M = 2.
class PortfolioOracle final : public ScOracle {
 public:
  explicit PortfolioOracle(DenseMatrix returns);

  std::size_t dim() const override { return returns_.cols; }
  double sc_parameter() const override { return 2.0; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hess_vec(std::span<const double> x, std::span<const double> u,
                std::span<double> out) const override;
  double hess_quad(std::span<const double> x, std::span<const double> u) const override;
  using ScOracle::gradient;
  using ScOracle::hess_vec;

  const DenseMatrix& returns() const { return returns_; }

 private:
  Vector products(std::span<const double> x) const;

  DenseMatrix returns_;
};

/**
 * Poisson likelihood f(x) = sum_i w_i^T x - sum_i y_i ln(w_i^T x) with
 * nonnegative W and counts y. Rows with y_i = 0 only add a linear term and do
 * not restrict the domain. M = max over y_i > 0 of 2 / sqrt(y_i).
 */
class PoissonOracle final : public ScOracle {
 public:
  PoissonOracle(DenseMatrix w, std::vector<double> counts);

  std::size_t dim() const override { return w_.cols; }
  double sc_parameter() const override { return m_; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hess_vec(std::span<const double> x, std::span<const double> u,
                std::span<double> out) const override;
  double hess_quad(std::span<const double> x, std::span<const double> u) const override;
  using ScOracle::gradient;
  using ScOracle::hess_vec;

 private:
  DenseMatrix w_;
  std::vector<double> y_;
  Vector column_sums_;
  double m_ = 2.0;
};

/**
 * Regularized logistic loss
 * f(x) = (1/N) sum_i log(1 + exp(-y_i (<phi_i, x> + mu))) + (gamma/2) ||x||^2,
 * self-concordant with M = max_i ||phi_i|| / sqrt(gamma). dom f is all of R^n.
 */
class LogisticOracle final : public ScOracle {
 public:
  LogisticOracle(DenseMatrix features, std::vector<double> labels, double intercept, double gamma);

  std::size_t dim() const override { return phi_.cols; }
  double sc_parameter() const override { return m_; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hess_vec(std::span<const double> x, std::span<const double> u,
                std::span<double> out) const override;
  using ScOracle::gradient;
  using ScOracle::hess_vec;

 private:
  Vector margins(std::span<const double> x) const;

  DenseMatrix phi_;
  std::vector<double> y_;
  double intercept_;
  double gamma_;
  double m_;
};

/// f(x) = -sum_i ln x_i on the open positive orthant; M = 2.
class LogBarrierOracle final : public ScOracle {
 public:
  explicit LogBarrierOracle(std::size_t n) : n_(n) {}

  std::size_t dim() const override { return n_; }
  double sc_parameter() const override { return 2.0; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hess_vec(std::span<const double> x, std::span<const double> u,
                std::span<double> out) const override;
  using ScOracle::gradient;
  using ScOracle::hess_vec;

 private:
  std::size_t n_;
};

/// f(x) = (1/2) sum_i d_i (x_i - c_i)^2. Self-concordant for any M > 0.
class QuadraticOracle final : public ScOracle {
 public:
  QuadraticOracle(std::vector<double> diag, std::vector<double> center, double M = 2.0);
  /// Identity Hessian centered at the origin.
  static QuadraticOracle identity(std::size_t n, double M = 2.0);

  std::size_t dim() const override { return d_.size(); }
  double sc_parameter() const override { return m_; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hess_vec(std::span<const double> x, std::span<const double> u,
                std::span<double> out) const override;
  using ScOracle::gradient;
  using ScOracle::hess_vec;

 private:
  std::vector<double> d_;
  std::vector<double> c_;
  double m_;
};

/// T x n matrix with entries max(1 + 0.1 z, 0.01), z from NormalStream(seed)
/// in row-major order.
DenseMatrix gen_portfolio_data(std::size_t T, std::size_t n, std::uint64_t seed);

/// CSV with a `T,n,seed` first line followed by T rows of 17-digit reals.
void write_portfolio_csv(std::ostream& out, const DenseMatrix& r, std::uint64_t seed);
/// Returns the matrix; the seed from the header goes to *seed when non-null.
DenseMatrix read_portfolio_csv(std::istream& in, std::uint64_t* seed = nullptr);

}  // namespace scfw
