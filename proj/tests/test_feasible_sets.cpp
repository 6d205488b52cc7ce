#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "scfw/errors.hpp"
#include "scfw/feasible_sets.hpp"
#include "lmo_bruteforce.hpp"
#include "test_support.hpp"

using namespace scfw;

using testing::make_set;
using testing::random_feasible;
using testing::vertices;

TEST_CASE("lmo_simplex examples") {
  CHECK(lmo_simplex(Vector{3, -1, 2}) == Vector{0, 1, 0});
  CHECK(lmo_simplex(Vector{0, 0}) == Vector{1, 0});
  CHECK(lmo_simplex(Vector{-4, -4.0 / 3.0}) == Vector{1, 0});
}

TEST_CASE("lmo_l1ball examples") {
  CHECK(lmo_l1ball(Vector{1, -2, 0.5}, 1.0) == Vector{0, 1, 0});
  CHECK(lmo_l1ball(Vector{0, 0, 0}, 1.0) == Vector{-1, 0, 0});
  CHECK(lmo_l1ball(Vector{5}, 2.0) == Vector{-2});
}

TEST_CASE("lmo_nonneg_l1 examples") {
  CHECK(lmo_nonneg_l1(Vector{0.5, -1, 2}, 3.0) == Vector{0, 3, 0});
  CHECK(lmo_nonneg_l1(Vector{1, 2}, 5.0) == Vector{0, 0});
  CHECK(lmo_nonneg_l1(Vector{-1, -1}, 1.0) == Vector{1, 0});
}

TEST_CASE("start points") {
  CHECK(Simplex(4).start_point() == Vector{0.25, 0.25, 0.25, 0.25});
  CHECK(L1Ball(2, 3.0).start_point() == Vector{0, 0});
  CHECK(NonnegL1Ball(2, 2.0).start_point() == Vector{0.5, 0.5});
}

TEST_CASE("non-finite costs and bad construction are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(lmo_simplex(Vector{0, nan}), InputError);
  CHECK_THROWS_AS(lmo_l1ball(Vector{inf, 0}, 1.0), InputError);
  CHECK_THROWS_AS(lmo_nonneg_l1(Vector{0, -inf}, 1.0), InputError);
  CHECK_THROWS_AS(L1Ball(2, 0.0), InputError);
  CHECK_THROWS_AS(NonnegL1Ball(2, -1.0), InputError);
  CHECK_THROWS_AS(Simplex(0), InputError);
}

TEST_CASE("contains uses a 1e-9 tolerance") {
  Simplex s(2);
  CHECK(s.contains(Vector{0.5, 0.5 + 5e-10}));
  CHECK_FALSE(s.contains(Vector{0.5, 0.5 + 5e-9}));
  CHECK(s.contains(Vector{-5e-10, 1.0}));
  CHECK_FALSE(s.contains(Vector{-5e-9, 1.0 + 5e-9}));
  L1Ball b(2, 1.0);
  CHECK(b.contains(Vector{-0.5, 0.5}));
  CHECK_FALSE(b.contains(Vector{-0.5, 0.51}));
  NonnegL1Ball nb(2, 1.0);
  CHECK(nb.contains(Vector{0.0, 0.0}));
  CHECK_FALSE(nb.contains(Vector{-0.01, 0.0}));
}

TEST_CASE("brute-force LMO optimality, membership and diameter for n <= 6") {
  std::mt19937_64 rng(2024);
  for (const std::string kind : {"simplex", "l1_ball", "nonneg_l1"}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const double R = kind == "simplex" ? 1.0 : 1.7;
      const auto set = make_set(kind, n, R);
      const auto verts = vertices(kind, n, R);
      std::vector<Vector> points = verts;
      for (int i = 0; i < 1000; ++i) points.push_back(random_feasible(rng, verts));

      for (int trial = 0; trial < 60; ++trial) {
        const Vector c = testing::random_vector(rng, n, -2, 2);
        const Vector s = set->lmo(c);
        const double sc = testing::inner(c, s);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : points) best = std::min(best, testing::inner(c, y));
        CHECK(sc <= best + 1e-12);
        CHECK(set->contains(s));
      }

      double diam = 0.0;
      for (const auto& a : verts)
        for (const auto& b : verts) diam = std::max(diam, testing::norm2(testing::sub(a, b)));
      CHECK(std::abs(set->diameter() - diam) <= 1e-12);

      CHECK(set->contains(set->start_point()));
    }
  }
}

TEST_CASE("brute-force report is clean") {
  std::mt19937_64 rng(31);
  const auto rep = testing::check_lmo_bruteforce(rng, 20);
  CHECK(rep.cases == 3 * 6 * 20);
  CHECK(rep.ok());
}

TEST_CASE("lmo output is feasible for 1000 random costs and invariant under positive scaling") {
  std::mt19937_64 rng(77);
  for (const std::string kind : {"simplex", "l1_ball", "nonneg_l1"}) {
    const auto set = make_set(kind, 7, 2.5);
    for (int i = 0; i < 1000; ++i) {
      const Vector c = testing::random_vector(rng, 7, -5, 5);
      const Vector s = set->lmo(c);
      CHECK(set->contains(s));
      Vector scaled = c;
      const double lambda = std::exp(testing::random_vector(rng, 1, -5, 5)[0]);
      for (double& v : scaled) v *= lambda;
      CHECK(set->lmo(scaled) == s);
    }
  }
}

TEST_CASE("start points are relative-interior points") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const Vector s = Simplex(n).start_point();
    for (double v : s) CHECK(v > 0.0);
    const Vector nb = NonnegL1Ball(n, 3.0).start_point();
    double sum = 0.0;
    for (double v : nb) {
      CHECK(v > 0.0);
      sum += v;
    }
    CHECK(sum < 3.0);
  }
}
