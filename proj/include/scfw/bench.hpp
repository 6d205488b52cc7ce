#pragma once

// Problem factory and the (method x problem) benchmark suite.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "scfw/feasible_sets.hpp"
#include "scfw/kernels.hpp"
#include "scfw/profiles.hpp"
#include "scfw/sc_core.hpp"
#include "scfw/solvers.hpp"

namespace scfw {

/// Description of one benchmark instance.
///
/// type is one of portfolio | poisson | logistic | barrier. Portfolio data come
/// from `data` (CSV written by gen-data) or are generated from (T, n, seed).
/// Poisson reads a LIBSVM file and uses y_i = 1 with W = the raw features.
/// Logistic reads a LIBSVM file or, without one, draws N x n standard normal
/// features with labels from a random hyperplane.
struct ProblemSpec {
  std::string id;  // empty: derived from the other fields
  std::string type = "portfolio";
  std::size_t T = 50;
  std::size_t n = 20;
  std::size_t N = 200;
  std::uint64_t seed = 7;
  std::filesystem::path data;
  double radius = 10.0;
  double intercept = 0.0;
  double gamma = 0.0;  // 0 selects 1/N
};

struct Problem {
  std::string id;
  std::unique_ptr<ScOracle> oracle;
  std::unique_ptr<FeasibleSet> set;
};

Problem make_problem(const ProblemSpec& spec);
std::string default_problem_id(const ProblemSpec& spec);

/// Synthetic logistic data; labels are sign(<phi_i, w>) for a random w.
void gen_logistic_data(std::size_t N, std::size_t n, std::uint64_t seed, DenseMatrix& features,
                       std::vector<double>& labels);

/// Method names: standard | line_search | v1 | v2 | lloo.
RunTrace run_method(const std::string& method, const Problem& problem, const RunConfig& base);

struct SuiteConfig {
  std::vector<ProblemSpec> problems;
  std::vector<std::string> methods{"standard", "line_search", "v1", "v2", "lloo"};
  std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  std::size_t max_iter = 50000;
  double gap_tol = 1e-10;
  std::vector<std::uint64_t> seeds;  // expands problems that carry no explicit seed
  std::filesystem::path out_dir = "bench_out";
};

/// Parses the JSON suite config; relative data paths resolve against base_dir.
SuiteConfig parse_suite_config(const std::string& json_text,
                               const std::filesystem::path& base_dir = {});

struct RunSummary {
  std::string problem;
  std::string method;
  std::string termination;  // empty when the run failed to start
  std::string error;
  std::size_t iterations = 0;
  double final_f = 0.0;
  double final_gap = 0.0;
  double lower_bound = 0.0;
  std::int64_t time_ns = 0;
};

struct SuiteResult {
  std::vector<RunSummary> runs;
  ProfileTable table;
  std::vector<ProfileRow> profiles;
};

/**
 * Runs every (method, problem) pair, writing `<problem>__<method>.csv` traces,
 * `summary.json` and `profiles.csv` to out_dir. A run that fails is recorded
 * with its error and a header-only trace; it never aborts the suite.
 */
SuiteResult run_suite(const SuiteConfig& config);

/// Rebuilds the profile table from the trace CSVs of a suite output directory.
ProfileTable load_trace_directory(const std::filesystem::path& dir);

}  // namespace scfw
