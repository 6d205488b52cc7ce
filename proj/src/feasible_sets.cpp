#include "scfw/feasible_sets.hpp"

#include <algorithm>
#include <cmath>

#include "scfw/errors.hpp"

namespace scfw {

namespace {

void require_finite(std::span<const double> c) {
  for (double v : c)
    if (!std::isfinite(v)) throw InputError("lmo: cost vector has a non-finite entry");
}

void require_size(std::span<const double> c, std::span<double> out, std::size_t n) {
  if (c.size() != n || out.size() != n) throw InputError("lmo: dimension mismatch");
}

// Lowest index attaining the minimum.
std::size_t argmin(std::span<const double> c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] < c[best]) best = i;
  return best;
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("radius must be positive and finite");
}

}  // namespace

Vector FeasibleSet::lmo(std::span<const double> c) const {
  Vector out(dim());
  lmo(c, out);
  return out;
}

Simplex::Simplex(std::size_t n) : n_(n) {
  if (n == 0) throw InputError("simplex: dimension must be positive");
}

void Simplex::lmo(std::span<const double> c, std::span<double> out) const {
  require_size(c, out, n_);
  require_finite(c);
  std::fill(out.begin(), out.end(), 0.0);
  out[argmin(c)] = 1.0;
}

bool Simplex::contains(std::span<const double> x) const {
  if (x.size() != n_) return false;
  double sum = 0.0;
  for (double v : x) {
    if (!(v >= -kMembershipTol)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= kMembershipTol;
}

double Simplex::diameter() const { return n_ == 1 ? 0.0 : std::sqrt(2.0); }

Vector Simplex::start_point() const { return Vector(n_, 1.0 / static_cast<double>(n_)); }

L1Ball::L1Ball(std::size_t n, double radius) : n_(n), radius_(radius) {
  if (n == 0) throw InputError("l1_ball: dimension must be positive");
  check_radius(radius);
}

void L1Ball::lmo(std::span<const double> c, std::span<double> out) const {
  require_size(c, out, n_);
  require_finite(c);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n_; ++i)
    if (std::abs(c[i]) > std::abs(c[best])) best = i;
  std::fill(out.begin(), out.end(), 0.0);
  // sign(0) counts as +1.
  out[best] = c[best] < 0.0 ? radius_ : -radius_;
}

bool L1Ball::contains(std::span<const double> x) const {
  if (x.size() != n_) return false;
  double norm = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) return false;
    norm += std::abs(v);
  }
  return norm <= radius_ + kMembershipTol;
}

Vector L1Ball::start_point() const { return Vector(n_, 0.0); }

NonnegL1Ball::NonnegL1Ball(std::size_t n, double radius) : n_(n), radius_(radius) {
  if (n == 0) throw InputError("nonneg_l1: dimension must be positive");
  check_radius(radius);
}

void NonnegL1Ball::lmo(std::span<const double> c, std::span<double> out) const {
  require_size(c, out, n_);
  require_finite(c);
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t best = argmin(c);
  if (c[best] < 0.0) out[best] = radius_;
}

bool NonnegL1Ball::contains(std::span<const double> x) const {
  if (x.size() != n_) return false;
  double sum = 0.0;
  for (double v : x) {
    if (!(v >= -kMembershipTol)) return false;
    sum += v;
  }
  return sum <= radius_ + kMembershipTol;
}

double NonnegL1Ball::diameter() const {
  // Vertex pairs R e_i, R e_j are sqrt(2) R apart; the origin is only R away.
  return n_ == 1 ? radius_ : std::sqrt(2.0) * radius_;
}

Vector NonnegL1Ball::start_point() const {
  return Vector(n_, radius_ / (2.0 * static_cast<double>(n_)));
}

Vector lmo_simplex(std::span<const double> c) { return Simplex(c.size()).lmo(c); }

Vector lmo_l1ball(std::span<const double> c, double radius) {
  return L1Ball(c.size(), radius).lmo(c);
}

Vector lmo_nonneg_l1(std::span<const double> c, double radius) {
  return NonnegL1Ball(c.size(), radius).lmo(c);
}

}  // namespace scfw
