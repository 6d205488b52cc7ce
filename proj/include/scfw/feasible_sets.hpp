#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "scfw/sc_core.hpp"

namespace scfw {

/// Tolerance applied to linear constraints by FeasibleSet::contains.
inline constexpr double kMembershipTol = 1e-9;

/**
 * Compact convex set accessed through a linear minimization oracle.
 *
 * The concrete sets break LMO ties by lowest index so that runs are
 * deterministic.
 */
class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
  /// argmin over the set of <c, s>; throws InputError on non-finite c.
  virtual void lmo(std::span<const double> c, std::span<double> out) const = 0;
  virtual bool contains(std::span<const double> x) const = 0;
  /// Euclidean diameter.
  virtual double diameter() const = 0;
  /// A point in the relative interior.
  virtual Vector start_point() const = 0;

  Vector lmo(std::span<const double> c) const;
};

/// Unit simplex {x >= 0, sum x = 1}.
class Simplex final : public FeasibleSet {
 public:
  explicit Simplex(std::size_t n);

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "simplex"; }
  void lmo(std::span<const double> c, std::span<double> out) const override;
  bool contains(std::span<const double> x) const override;
  double diameter() const override;
  Vector start_point() const override;
  using FeasibleSet::lmo;

 private:
  std::size_t n_;
};

/// {x : ||x||_1 <= R}.
class L1Ball final : public FeasibleSet {
 public:
  L1Ball(std::size_t n, double radius);

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "l1_ball"; }
  double radius() const { return radius_; }
  void lmo(std::span<const double> c, std::span<double> out) const override;
  bool contains(std::span<const double> x) const override;
  double diameter() const override { return 2.0 * radius_; }
  Vector start_point() const override;
  using FeasibleSet::lmo;

 private:
  std::size_t n_;
  double radius_;
};

/// {x >= 0 : ||x||_1 <= R}; its vertices are the origin and R e_i.
class NonnegL1Ball final : public FeasibleSet {
 public:
  NonnegL1Ball(std::size_t n, double radius);

  std::size_t dim() const override { return n_; }
  std::string name() const override { return "nonneg_l1"; }
  double radius() const { return radius_; }
  void lmo(std::span<const double> c, std::span<double> out) const override;
  bool contains(std::span<const double> x) const override;
  double diameter() const override;
  Vector start_point() const override;
  using FeasibleSet::lmo;

 private:
  std::size_t n_;
  double radius_;
};

// Free-function forms of the three oracles.
Vector lmo_simplex(std::span<const double> c);
Vector lmo_l1ball(std::span<const double> c, double radius);
Vector lmo_nonneg_l1(std::span<const double> c, double radius);

}  // namespace scfw
