#include <doctest.h>

#include <cmath>
#include <random>

#include "scfw/errors.hpp"
#include "scfw/problems.hpp"
#include "scfw/step_policies.hpp"
#include "test_support.hpp"

using namespace scfw;
using doctest::Approx;

namespace {

// f = 0 everywhere; paired with a claimed positive gap no step can pass the
// sufficient-decrease test.
class ZeroOracle final : public ScOracle {
 public:
  std::size_t dim() const override { return 2; }
  double sc_parameter() const override { return 2.0; }
  bool in_domain(std::span<const double>) const override { return true; }
  double value(std::span<const double>) const override { return 0.0; }
  void gradient(std::span<const double>, std::span<double> out) const override {
    out[0] = out[1] = 0.0;
  }
  void hess_vec(std::span<const double>, std::span<const double>,
                std::span<double> out) const override {
    out[0] = out[1] = 0.0;
  }
  using ScOracle::gradient;
  using ScOracle::hess_vec;
};

}  // namespace

TEST_CASE("standard step") {
  CHECK(standard_step(0) == 1.0);
  CHECK(standard_step(2) == 0.5);
  CHECK(standard_step(8) == 0.2);
}

TEST_CASE("v1 step examples") {
  const StepResult a = v1_step(2.0, std::sqrt(10.0), 2.0);
  CHECK(a.alpha == Approx(0.122514822655441378).epsilon(1e-14));
  CHECK(a.alpha * std::sqrt(10.0) < 1.0);

  const StepResult b = v1_step(100.0, 0.5, 2.0);
  CHECK(b.alpha == 1.0);
  CHECK(b.alpha * 0.5 == 0.5);

  const StepResult c = v1_step(1e-12, 0.3, 2.0);
  CHECK(c.alpha < 1e-10);
  CHECK(c.alpha > 0.0);

  CHECK(v1_step(0.7, 0.0, 2.0).alpha == 1.0);
  CHECK_THROWS_AS(v1_step(0.0, 1.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(v1_step(-1.0, 1.0, 2.0), PreconditionError);
}

TEST_CASE("v1 step maximizes the local model and is always safe") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-8.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double gap = std::exp(lg(rng));
    const double e = std::exp(lg(rng));
    const double M = std::exp(lg(rng) / 4.0);
    const StepResult r = v1_step(gap, e, M);
    CHECK(r.alpha > 0.0);
    CHECK(r.alpha <= 1.0);
    CHECK(r.alpha * e < 1.0);
    CHECK(r.model_decrease > 0.0);
    if (r.alpha == 1.0) CHECK(e < 1.0);

    // Grid search over (0, min(1, 1/e)) for the model maximum.
    const double k4 = 4.0 / (M * M);
    const double hi = std::min(1.0, (1.0 - 1e-9) / e);
    double best = -INFINITY;
    for (int i = 1; i <= 2000; ++i) {
      const double t = hi * i / 2000.0;
      best = std::max(best, t * gap - k4 * omega_star(t * e));
    }
    CHECK(r.model_decrease >= best - 1e-12 * (1.0 + std::abs(best)));
  }
}

TEST_CASE("golden section on a unimodal quadratic") {
  const double t = golden_section_minimize([](double s) { return (s - 0.3) * (s - 0.3); }, 0.0,
                                           1.0, 1e-10);
  CHECK(std::abs(t - 0.3) <= 1e-9);
}

TEST_CASE("exact line search examples") {
  SUBCASE("interior minimizer") {
    const QuadraticOracle f({2.0}, {0.3});  // f(t) = (t - 0.3)^2
    const double t = exact_line_search(f, Vector{0.0}, Vector{1.0}, 0.0);
    CHECK(std::abs(t - 0.3) <= 1e-9);
  }
  SUBCASE("no descent direction") {
    const QuadraticOracle f({2.0}, {-1.0});
    CHECK(exact_line_search(f, Vector{0.0}, Vector{1.0}, 0.0) == 0.0);
  }
  SUBCASE("log-barrier stays inside the domain cap") {
    LogBarrierOracle f(2);
    const Vector x{0.25, 0.75};
    const Vector v{0.75, -0.75};
    const double e = std::sqrt(10.0);
    const double t = exact_line_search(f, x, v, e);
    CHECK(t > 0.0);
    CHECK(t <= 0.99 / e + 1e-15);
    const Vector y = testing::add_scaled(x, t, v);
    CHECK(std::isfinite(f.value(y)));
    // The unconstrained minimizer along v is the barycenter (t = 1/3), beyond the cap.
    CHECK(t == Approx(0.99 / e).epsilon(1e-8));
  }
  SUBCASE("agrees with a dense grid") {
    std::mt19937_64 rng(8);
    DenseMatrix r = gen_portfolio_data(30, 6, 4);
    PortfolioOracle f(r);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = testing::random_simplex_point(rng, 6);
      Vector s(6, 0.0);
      s[trial % 6] = 1.0;
      const Vector v = testing::sub(s, x);
      const double t = exact_line_search(f, x, v, 0.0);
      double best = f.value(testing::add_scaled(x, t, v));
      for (int i = 0; i <= 1000; ++i)
        CHECK(best <= f.value(testing::add_scaled(x, i / 1000.0, v)) + 1e-12);
    }
  }
}

TEST_CASE("backtracking accepts immediately when mu is large enough") {
  const auto f = QuadraticOracle::identity(2);
  const Vector x{1.0, 0.0};
  const Vector v{-1.0, 1.0};
  const StepResult r = backtrack_from(f, x, v, 1.0, f.value(x), 1.0, 2.0);
  CHECK(r.alpha == 0.5);
  CHECK(*r.lipschitz == 1.0);
  CHECK(r.evals_used == 1);
  CHECK(*r.f_new == Approx(0.25));
}

TEST_CASE("backtracking doubles mu from 0.25 to 1") {
  const auto f = QuadraticOracle::identity(2);
  const Vector x{1.0, 0.0};
  const Vector v{-1.0, 1.0};
  const StepResult r = backtrack_from(f, x, v, 1.0, f.value(x), 0.25, 2.0);
  CHECK(r.alpha == 0.5);
  CHECK(*r.lipschitz == 1.0);
  CHECK(r.evals_used == 3);
}

TEST_CASE("backtracking rejects probes outside the domain") {
  LogBarrierOracle f(2);
  const Vector x{0.25, 0.75};
  const Vector v{0.75, -0.75};
  const StepResult r = backtrack_from(f, x, v, 2.0, f.value(x), 1e-3, 2.0);
  CHECK(r.evals_used > 1);
  CHECK(r.alpha < 1.0);
  const Vector y = testing::add_scaled(x, r.alpha, v);
  CHECK(f.in_domain(y));
  const double q = f.value(x) - r.alpha * 2.0 + 0.5 * r.alpha * r.alpha * *r.lipschitz * 1.125;
  CHECK(f.value(y) <= q);
}

TEST_CASE("backtracking gives up after 100 doublings") {
  ZeroOracle f;
  CHECK_THROWS_AS(backtrack_from(f, Vector{0, 0}, Vector{1, 0}, 1.0, 0.0, 1.0, 2.0),
                  NonterminationError);
}

TEST_CASE("backtrack_step picks mu by clipping and tracks its state") {
  const QuadraticOracle f({1.0, 4.0}, {0.0, 0.0});
  const Vector x{0.5, 0.5};
  const Vector s{1.0, 0.0};
  const Vector v = testing::sub(s, x);
  const double g = -testing::inner(f.gradient(x), v);
  REQUIRE(g > 0.0);

  BacktrackState st;
  st.lipschitz = 100.0;
  // No previous decrease: mu starts at gamma_d * L and is accepted at once
  // since it is far above the curvature along v.
  StepResult r = backtrack_step(f, x, v, g, f.value(x), st);
  CHECK(*r.lipschitz == Approx(90.0));
  CHECK(st.lipschitz == Approx(90.0));
  CHECK(st.eval_count == 1);

  // A huge previous decrease pushes the heuristic below the window: clipped to gamma_d L.
  st.prev_decrease = 1e9;
  r = backtrack_step(f, x, v, g, f.value(x), st);
  CHECK(*r.lipschitz == Approx(81.0));
  CHECK(st.eval_count == 2);

  // A tiny previous decrease pushes it above: clipped to L.
  st.prev_decrease = 1e-12;
  r = backtrack_step(f, x, v, g, f.value(x), st);
  CHECK(*r.lipschitz == Approx(81.0));
  CHECK(st.eval_count == 3);
}

TEST_CASE("backtracking mu never exceeds gamma_u times the curvature along v for quadratics") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto diag = testing::random_vector(rng, 3, 0.1, 10.0);
    const QuadraticOracle f(diag, Vector(3, 0.0));
    const auto x = testing::random_simplex_point(rng, 3);
    const auto grad = f.gradient(x);
    Vector s(3, 0.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (grad[i] < grad[best]) best = i;
    s[best] = 1.0;
    const Vector v = testing::sub(s, x);
    const double g = -testing::inner(grad, v);
    if (!(g > 1e-12)) continue;
    double curv = 0.0;
    for (std::size_t i = 0; i < 3; ++i) curv += diag[i] * v[i] * v[i];
    curv /= testing::inner(v, v);
    const double mu0 = std::exp(testing::random_vector(rng, 1, -6, 1)[0]) * curv;
    const StepResult r = backtrack_from(f, x, v, g, f.value(x), mu0, 2.0);
    CHECK(*r.lipschitz <= std::max(mu0, 2.0 * curv * (1 + 1e-12)));
    const Vector y = testing::add_scaled(x, r.alpha, v);
    CHECK(f.value(y) <= f.value(x) - r.alpha * g +
                            0.5 * r.alpha * r.alpha * *r.lipschitz * testing::inner(v, v) + 1e-15);
  }
}

TEST_CASE("initial Lipschitz estimate") {
  const auto id = QuadraticOracle::identity(3);
  CHECK(init_lipschitz(id, Vector{0.2, 0.3, 0.5}, Vector{1, 0, 0}) == Approx(1.0).epsilon(1e-12));

  const QuadraticOracle d({1.0, 4.0}, {0.0, 0.0});
  CHECK(init_lipschitz(d, Vector{1, 1}, Vector{1, 0}) == Approx(4.0).epsilon(1e-12));

  LogBarrierOracle b(2);
  const Vector x0{0.25, 0.75};
  const Vector s0{1.0, 0.0};
  // Independent evaluation with the analytic gradient -1/x.
  const double eps = 1e-3;
  const double p0 = 0.25 + eps * 0.75;
  const double p1 = 0.75 - eps * 0.75;
  const double g0 = -1.0 / 0.25 + 1.0 / p0;
  const double g1 = -1.0 / 0.75 + 1.0 / p1;
  const double expected = std::sqrt(g0 * g0 + g1 * g1) / (eps * std::sqrt(2 * 0.75 * 0.75));
  const double got = init_lipschitz(b, x0, s0);
  CHECK(got > 0.0);
  CHECK(got == Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(init_lipschitz(id, Vector{0.2, 0.3, 0.5}, Vector{0.2, 0.3, 0.5}),
                  PreconditionError);
}
