#pragma once

// Hand-built 2 methods x 2 problems table. Every trace sits at relative error
// 1 until its hit iteration and at 0 from then on; time is 100 ns per
// iteration. Method A hits at (10, 20), method B at (20, 20), so at any
// eps in (0, 1): rho = (1, 1), iteration and time ratios = (1.0, 1.5).

#include <cstddef>
#include <string>

#include "scfw/profiles.hpp"
#include "scfw/solvers.hpp"

namespace scfw::testing {

inline RunTrace step_trace(std::size_t hit, std::size_t length, double fstar) {
  RunTrace t;
  t.method = "fixture";
  for (std::size_t k = 0; k <= length; ++k) {
    IterationRecord r;
    r.k = k;
    r.f = k < hit ? fstar + std::abs(fstar) : fstar;
    r.gap = k < hit ? 1.0 : 0.0;
    r.time_ns = static_cast<std::int64_t>(100 * k);
    t.iterations.push_back(r);
  }
  t.termination = Termination::gap_below_eps;
  return t;
}

inline ProfileTable two_by_two_fixture() {
  ProfileTable t;
  t.add("A", "p1", step_trace(10, 30, 2.0));
  t.add("A", "p2", step_trace(20, 30, -4.0));
  t.add("B", "p1", step_trace(20, 30, 2.0));
  t.add("B", "p2", step_trace(20, 30, -4.0));
  return t;
}

}  // namespace scfw::testing
