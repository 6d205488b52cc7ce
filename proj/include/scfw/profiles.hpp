#pragma once

// Performance-profile metrics over a (method x problem) grid of traces.
//
// F_j is the best objective value any method reached on problem j, the
// relative error of an iterate is (f - F_j) / |F_j|, N_ij(eps) is the first
// iteration at which method i is within eps of F_j, and T_ij(eps) the elapsed
// time recorded at that iteration.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scfw/solvers.hpp"

namespace scfw {

/// (f_k - F_best) / |F_best|; throws DomainError when |F_best| < 1e-300.
double relative_error(double f_k, double f_best);

struct ProfileSeries {
  std::vector<std::size_t> k;
  std::vector<double> f;
  std::vector<std::int64_t> time_ns;
};

class ProfileTable {
 public:
  /// Registers a run; an empty trace marks a failed run (never solves).
  void add(const std::string& method, const std::string& problem, const RunTrace& trace);

  /// Sorted, deduplicated.
  std::vector<std::string> methods() const;
  std::vector<std::string> problems() const;

  bool has_run(const std::string& method, const std::string& problem) const;
  /// min over all methods of their best value on `problem`; nullopt if no data.
  std::optional<double> best_value(const std::string& problem) const;
  /// Relative-error sequence of one run.
  std::vector<double> rel_err_series(const std::string& method, const std::string& problem) const;
  std::optional<std::size_t> iterations_to(const std::string& method, const std::string& problem,
                                           double eps) const;
  std::optional<std::int64_t> time_to(const std::string& method, const std::string& problem,
                                      double eps) const;

 private:
  std::optional<std::size_t> first_hit(const std::string& method, const std::string& problem,
                                       double eps) const;

  std::map<std::pair<std::string, std::string>, ProfileSeries> runs_;  // (method, problem)
};

/// rho_i(eps): share of problems each method solves to eps, in methods() order.
std::vector<double> fraction_solved(const ProfileTable& table, double eps);

/**
 * Mean over problems of N_ij(eps) / min_s N_sj(eps), in methods() order.
 * Only problems the method reached are averaged; a method that reached none
 * gets NaN. Reaching eps at iteration 0 counts as one iteration. Throws
 * PreconditionError when no method reaches eps anywhere.
 */
std::vector<double> iteration_ratio(const ProfileTable& table, double eps);
/// Same as iteration_ratio with T_ij(eps) in nanoseconds (clamped to >= 1).
std::vector<double> time_ratio(const ProfileTable& table, double eps);

struct ProfileRow {
  std::string method;
  double eps = 0.0;
  double frac_solved = 0.0;
  double iter_ratio = 0.0;
  double time_ratio = 0.0;
};

/// All three metrics on a grid; ratios are NaN at eps values nobody reached.
std::vector<ProfileRow> compute_profiles(const ProfileTable& table, const std::vector<double>& eps_grid);

/// `method,eps,frac_solved,iter_ratio,time_ratio` with 17-digit reals.
void write_profiles_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

}  // namespace scfw
