#include "scfw/problems.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/random.hpp"
#include "scfw/trace_io.hpp"

namespace scfw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_domain(const ScOracle& f, std::span<const double> x, const char* what) {
  if (!f.in_domain(x)) throw DomainError(std::string(what) + ": x is outside dom f");
}

void require_dim(std::size_t expected, std::span<const double> x) {
  if (x.size() != expected) throw InputError("oracle: dimension mismatch");
}

// Numerically stable log(1 + exp(-t)).
double logistic_loss(double t) {
  return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double et = std::exp(t);
  return et / (1.0 + et);
}

}  // namespace

// ---------------------------------------------------------------------------
// Random stream

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NormalStream::uniform() {
  ++counter_;
  const std::uint64_t bits = splitmix64_mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

// ---------------------------------------------------------------------------
// Portfolio

PortfolioOracle::PortfolioOracle(DenseMatrix returns) : returns_(std::move(returns)) {
  if (returns_.rows == 0 || returns_.cols == 0) throw InputError("portfolio: empty return matrix");
  for (double v : returns_.data)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputError("portfolio: price ratios must be positive and finite");
}

Vector PortfolioOracle::products(std::span<const double> x) const {
  Vector rx(returns_.rows);
  kernels::gemv(returns_, x, rx);
  return rx;
}

bool PortfolioOracle::in_domain(std::span<const double> x) const {
  require_dim(dim(), x);
  const Vector rx = products(x);
  return std::all_of(rx.begin(), rx.end(), [](double v) { return v > 0.0; });
}

double PortfolioOracle::value(std::span<const double> x) const {
  require_dim(dim(), x);
  const Vector rx = products(x);
  double s = 0.0;
  for (double v : rx) {
    if (!(v > 0.0)) return kInf;
    s -= std::log(v);
  }
  return s;
}

void PortfolioOracle::gradient(std::span<const double> x, std::span<double> out) const {
  require_domain(*this, x, "portfolio gradient");
  Vector w = products(x);
  for (double& v : w) v = -1.0 / v;
  kernels::gemv_t(returns_, w, out);
}

void PortfolioOracle::hess_vec(std::span<const double> x, std::span<const double> u,
                               std::span<double> out) const {
  require_domain(*this, x, "portfolio hess_vec");
  const Vector rx = products(x);
  Vector w = products(u);
  for (std::size_t t = 0; t < w.size(); ++t) w[t] /= rx[t] * rx[t];
  kernels::gemv_t(returns_, w, out);
}

double PortfolioOracle::hess_quad(std::span<const double> x, std::span<const double> u) const {
  require_domain(*this, x, "portfolio hess_quad");
  const Vector rx = products(x);
  Vector ru = products(u);
  for (std::size_t t = 0; t < ru.size(); ++t) ru[t] /= rx[t];
  return kernels::sum_sq(ru);
}

// ---------------------------------------------------------------------------
// Poisson

PoissonOracle::PoissonOracle(DenseMatrix w, std::vector<double> counts)
    : w_(std::move(w)), y_(std::move(counts)), column_sums_(w_.cols, 0.0) {
  if (w_.rows != y_.size()) throw InputError("poisson: W rows and counts differ in length");
  if (w_.cols == 0) throw InputError("poisson: W has no columns");
  for (double v : w_.data)
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("poisson: W must be nonnegative");
  double max_m = 0.0;
  for (std::size_t i = 0; i < w_.rows; ++i) {
    if (!(y_[i] >= 0.0) || !std::isfinite(y_[i]))
      throw InputError("poisson: counts must be nonnegative");
    kernels::axpy(1.0, w_.row(i), column_sums_);
    if (y_[i] > 0.0) {
      const auto row = w_.row(i);
      if (std::none_of(row.begin(), row.end(), [](double v) { return v > 0.0; }))
        throw InputError("poisson: row " + std::to_string(i) +
                         " has a positive count but no positive entry");
      max_m = std::max(max_m, 2.0 / std::sqrt(y_[i]));
    }
  }
  // All-zero counts give a linear objective; any M is valid.
  m_ = max_m > 0.0 ? max_m : 2.0;
}

bool PoissonOracle::in_domain(std::span<const double> x) const {
  require_dim(dim(), x);
  Vector wx(w_.rows);
  kernels::gemv(w_, x, wx);
  for (std::size_t i = 0; i < wx.size(); ++i)
    if (y_[i] > 0.0 && !(wx[i] > 0.0)) return false;
  return true;
}

double PoissonOracle::value(std::span<const double> x) const {
  require_dim(dim(), x);
  Vector wx(w_.rows);
  kernels::gemv(w_, x, wx);
  double s = kernels::dot(column_sums_, x);
  for (std::size_t i = 0; i < wx.size(); ++i) {
    if (y_[i] == 0.0) continue;
    if (!(wx[i] > 0.0)) return kInf;
    s -= y_[i] * std::log(wx[i]);
  }
  return s;
}

void PoissonOracle::gradient(std::span<const double> x, std::span<double> out) const {
  require_domain(*this, x, "poisson gradient");
  Vector wx(w_.rows);
  kernels::gemv(w_, x, wx);
  for (std::size_t i = 0; i < wx.size(); ++i) wx[i] = y_[i] > 0.0 ? -y_[i] / wx[i] : 0.0;
  kernels::gemv_t(w_, wx, out);
  kernels::axpy(1.0, column_sums_, out);
}

void PoissonOracle::hess_vec(std::span<const double> x, std::span<const double> u,
                             std::span<double> out) const {
  require_domain(*this, x, "poisson hess_vec");
  Vector wx(w_.rows);
  Vector wu(w_.rows);
  kernels::gemv(w_, x, wx);
  kernels::gemv(w_, u, wu);
  for (std::size_t i = 0; i < wx.size(); ++i)
    wu[i] = y_[i] > 0.0 ? y_[i] * wu[i] / (wx[i] * wx[i]) : 0.0;
  kernels::gemv_t(w_, wu, out);
}

double PoissonOracle::hess_quad(std::span<const double> x, std::span<const double> u) const {
  require_domain(*this, x, "poisson hess_quad");
  Vector wx(w_.rows);
  Vector wu(w_.rows);
  kernels::gemv(w_, x, wx);
  kernels::gemv(w_, u, wu);
  double s = 0.0;
  for (std::size_t i = 0; i < wx.size(); ++i) {
    if (y_[i] == 0.0) continue;
    const double r = wu[i] / wx[i];
    s += y_[i] * r * r;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Logistic

LogisticOracle::LogisticOracle(DenseMatrix features, std::vector<double> labels, double intercept,
                               double gamma)
    : phi_(std::move(features)), y_(std::move(labels)), intercept_(intercept), gamma_(gamma) {
  if (!(gamma_ > 0.0)) throw InputError("logistic: gamma must be positive");
  if (phi_.rows != y_.size()) throw InputError("logistic: features and labels differ in length");
  if (phi_.rows == 0 || phi_.cols == 0) throw InputError("logistic: empty feature matrix");
  double max_norm = 0.0;
  for (std::size_t i = 0; i < phi_.rows; ++i)
    max_norm = std::max(max_norm, std::sqrt(kernels::sum_sq(phi_.row(i))));
  m_ = max_norm / std::sqrt(gamma_);
  // A zero feature matrix leaves a pure quadratic, SC for every M.
  if (!(m_ > 0.0)) m_ = 1.0;
}

Vector LogisticOracle::margins(std::span<const double> x) const {
  Vector t(phi_.rows);
  kernels::gemv(phi_, x, t);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = y_[i] * (t[i] + intercept_);
  return t;
}

bool LogisticOracle::in_domain(std::span<const double> x) const {
  require_dim(dim(), x);
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

double LogisticOracle::value(std::span<const double> x) const {
  if (!in_domain(x)) return kInf;
  const Vector t = margins(x);
  double s = 0.0;
  for (double ti : t) s += logistic_loss(ti);
  return s / static_cast<double>(phi_.rows) + 0.5 * gamma_ * kernels::sum_sq(x);
}

void LogisticOracle::gradient(std::span<const double> x, std::span<double> out) const {
  require_domain(*this, x, "logistic gradient");
  Vector w = margins(x);
  const double inv_n = 1.0 / static_cast<double>(phi_.rows);
  // l'(t) = -sigmoid(-t)
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -sigmoid(-w[i]) * y_[i] * inv_n;
  kernels::gemv_t(phi_, w, out);
  kernels::axpy(gamma_, x, out);
}

void LogisticOracle::hess_vec(std::span<const double> x, std::span<const double> u,
                              std::span<double> out) const {
  require_domain(*this, x, "logistic hess_vec");
  const Vector t = margins(x);
  Vector pu(phi_.rows);
  kernels::gemv(phi_, u, pu);
  const double inv_n = 1.0 / static_cast<double>(phi_.rows);
  for (std::size_t i = 0; i < pu.size(); ++i)
    pu[i] *= sigmoid(t[i]) * sigmoid(-t[i]) * y_[i] * y_[i] * inv_n;
  kernels::gemv_t(phi_, pu, out);
  kernels::axpy(gamma_, u, out);
}

// ---------------------------------------------------------------------------
// Log-barrier

bool LogBarrierOracle::in_domain(std::span<const double> x) const {
  require_dim(n_, x);
  return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
}

double LogBarrierOracle::value(std::span<const double> x) const {
  if (!in_domain(x)) return kInf;
  double s = 0.0;
  for (double v : x) s -= std::log(v);
  return s;
}

void LogBarrierOracle::gradient(std::span<const double> x, std::span<double> out) const {
  require_domain(*this, x, "log-barrier gradient");
  for (std::size_t i = 0; i < n_; ++i) out[i] = -1.0 / x[i];
}

void LogBarrierOracle::hess_vec(std::span<const double> x, std::span<const double> u,
                                std::span<double> out) const {
  require_domain(*this, x, "log-barrier hess_vec");
  for (std::size_t i = 0; i < n_; ++i) out[i] = u[i] / (x[i] * x[i]);
}

// ---------------------------------------------------------------------------
// Quadratic

QuadraticOracle::QuadraticOracle(std::vector<double> diag, std::vector<double> center, double M)
    : d_(std::move(diag)), c_(std::move(center)), m_(M) {
  if (d_.size() != c_.size() || d_.empty()) throw InputError("quadratic: bad dimensions");
  for (double v : d_)
    if (!(v > 0.0)) throw InputError("quadratic: diagonal must be positive");
  if (!(m_ > 0.0)) throw InputError("quadratic: M must be positive");
}

QuadraticOracle QuadraticOracle::identity(std::size_t n, double M) {
  return QuadraticOracle(std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), M);
}

bool QuadraticOracle::in_domain(std::span<const double> x) const {
  require_dim(d_.size(), x);
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

double QuadraticOracle::value(std::span<const double> x) const {
  if (!in_domain(x)) return kInf;
  double s = 0.0;
  for (std::size_t i = 0; i < d_.size(); ++i) s += d_[i] * (x[i] - c_[i]) * (x[i] - c_[i]);
  return 0.5 * s;
}

void QuadraticOracle::gradient(std::span<const double> x, std::span<double> out) const {
  require_domain(*this, x, "quadratic gradient");
  for (std::size_t i = 0; i < d_.size(); ++i) out[i] = d_[i] * (x[i] - c_[i]);
}

void QuadraticOracle::hess_vec(std::span<const double> x, std::span<const double> u,
                               std::span<double> out) const {
  require_domain(*this, x, "quadratic hess_vec");
  for (std::size_t i = 0; i < d_.size(); ++i) out[i] = d_[i] * u[i];
}

// ---------------------------------------------------------------------------
// Synthetic portfolio data

DenseMatrix gen_portfolio_data(std::size_t T, std::size_t n, std::uint64_t seed) {
  if (T == 0 || n == 0) throw InputError("gen_portfolio_data: T and n must be positive");
  DenseMatrix r(T, n);
  NormalStream rng(seed);
  for (double& v : r.data) v = std::max(1.0 + 0.1 * rng.normal(), 0.01);
  return r;
}

void write_portfolio_csv(std::ostream& out, const DenseMatrix& r, std::uint64_t seed) {
  out << r.rows << ',' << r.cols << ',' << seed << '\n';
  for (std::size_t t = 0; t < r.rows; ++t) {
    for (std::size_t j = 0; j < r.cols; ++j) {
      if (j) out << ',';
      out << format_real(r(t, j));
    }
    out << '\n';
  }
}

DenseMatrix read_portfolio_csv(std::istream& in, std::uint64_t* seed) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing T,n,seed header");
  std::size_t T = 0;
  std::size_t n = 0;
  std::uint64_t s = 0;
  {
    std::istringstream hs(line);
    char c1 = 0;
    char c2 = 0;
    if (!(hs >> T >> c1 >> n >> c2 >> s) || c1 != ',' || c2 != ',' || T == 0 || n == 0)
      throw ParseError(1, "malformed T,n,seed header");
  }
  DenseMatrix r(T, n);
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t lineno = t + 2;
    if (!std::getline(in, line)) throw ParseError(lineno, "missing data row");
    std::istringstream ls(line);
    std::string field;
    std::size_t j = 0;
    while (std::getline(ls, field, ',')) {
      if (j >= n) throw ParseError(lineno, "too many columns");
      std::size_t used = 0;
      try {
        r(t, j) = std::stod(field, &used);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad number '" + field + "'");
      }
      if (used != field.size()) throw ParseError(lineno, "bad number '" + field + "'");
      ++j;
    }
    if (j != n) throw ParseError(lineno, "expected " + std::to_string(n) + " columns");
  }
  if (seed) *seed = s;
  return r;
}

}  // namespace scfw
