#pragma once

#include <span>

#include "scfw/sc_core.hpp"

namespace scfw {

struct LlooResult {
  Vector point;           // on the unit simplex
  double l1_moved = 0.0;  // ||x - point||_1
};

/**
 * Local linear minimization oracle over the unit simplex with parameter
 * rho = sqrt(n).
 *
 * Solves min <c, p> subject to ||x - p||_1 <= d, d = sqrt(n) r: mass
 * m = min(d/2, 1) is moved onto the coordinate with the smallest cost and
 * taken from the coordinates with the largest costs. For every simplex point
 * y with ||y - x||_2 <= r the result satisfies <c, p> <= <c, y>, and
 * ||x - p||_2 <= sqrt(n) r.
 *
 * Ties in c are broken by lowest index for the receiving coordinate; the
 * donors are visited in descending c with equal costs in ascending index
 * order. Throws PreconditionError if x is not on the simplex.
 */
LlooResult lloo_simplex(std::span<const double> x, double radius, std::span<const double> c);

}  // namespace scfw
