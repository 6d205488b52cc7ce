// scfw: command-line front end for the Frank-Wolfe solvers and benchmark suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scfw/bench.hpp"
#include "scfw/errors.hpp"
#include "scfw/kernels.hpp"
#include "scfw/problems.hpp"
#include "scfw/profiles.hpp"
#include "scfw/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

void add_problem_options(CLI::App* cmd, scfw::ProblemSpec& spec) {
  cmd->add_option("--problem", spec.type, "portfolio | poisson | logistic | barrier")
      ->check(CLI::IsMember({"portfolio", "poisson", "logistic", "barrier"}));
  cmd->add_option("--T", spec.T, "portfolio periods");
  cmd->add_option("--n", spec.n, "dimension (portfolio assets, logistic features, barrier size)");
  cmd->add_option("--N", spec.N, "synthetic logistic sample count");
  cmd->add_option("--data", spec.data, "data file (portfolio CSV or LIBSVM)");
  cmd->add_option("--radius", spec.radius, "l1 radius for poisson/logistic");
  cmd->add_option("--gamma", spec.gamma, "logistic regularization (default 1/N)");
  cmd->add_option("--mu", spec.intercept, "logistic intercept");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw scfw::InputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frank-Wolfe methods for self-concordant minimization"};
  app.require_subcommand(1);
  std::string kernel_choice;
  app.add_option("--kernels", kernel_choice, "force the kernel backend")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  // solve
  auto* solve = app.add_subcommand("solve", "run one method on one problem");
  scfw::ProblemSpec solve_spec;
  std::string method = "v1";
  double eps = 1e-10;
  std::size_t max_iter = 50000;
  fs::path solve_out;
  add_problem_options(solve, solve_spec);
  solve->add_option("--method", method, "standard | line_search | v1 | v2 | lloo")
      ->check(CLI::IsMember({"standard", "line_search", "line", "v1", "v2", "lloo"}));
  solve->add_option("--eps", eps, "duality-gap tolerance");
  solve->add_option("--max-iter", max_iter, "iteration cap");
  solve->add_option("--seed", solve_spec.seed, "data seed");
  solve->add_option("--out", solve_out, "trace CSV path; a .json trace is written next to it");

  // bench
  auto* bench = app.add_subcommand("bench", "run a method x problem suite");
  fs::path config_path;
  bench->add_option("--config", config_path, "suite JSON")->required()->check(CLI::ExistingFile);

  // profile
  auto* profile = app.add_subcommand("profile", "recompute profile metrics from a trace directory");
  fs::path trace_dir;
  fs::path profile_out;
  std::vector<double> eps_grid = scfw::SuiteConfig{}.eps_grid;
  profile->add_option("--dir", trace_dir, "directory of <problem>__<method>.csv traces")
      ->required()
      ->check(CLI::ExistingDirectory);
  profile->add_option("--eps-grid", eps_grid, "relative-error levels");
  profile->add_option("--out", profile_out, "output CSV (default <dir>/profiles.csv)");

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "write a synthetic portfolio return matrix");
  std::size_t gen_T = 50;
  std::size_t gen_n = 20;
  std::uint64_t gen_seed = 7;
  fs::path gen_out;
  gen->add_option("--T", gen_T, "periods")->required();
  gen->add_option("--n", gen_n, "assets")->required();
  gen->add_option("--seed", gen_seed, "seed")->required();
  gen->add_option("--out", gen_out, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!kernel_choice.empty())
      scfw::kernels::set_backend(kernel_choice == "avx2" ? scfw::kernels::Backend::avx2
                                                         : scfw::kernels::Backend::scalar);

    if (*solve) {
      const scfw::Problem problem = scfw::make_problem(solve_spec);
      scfw::RunConfig config;
      config.epsilon = eps;
      config.max_iter = max_iter;
      config.seed = solve_spec.seed;
      if (method == "line") method = "line_search";
      if (method != "lloo") config.rule = scfw::parse_step_rule(method);
      const scfw::RunTrace trace = scfw::run_method(method, problem, config);
      if (!solve_out.empty()) {
        std::ofstream csv(solve_out);
        scfw::write_trace_csv(csv, trace);
        fs::path json_path = solve_out;
        json_path.replace_extension(".json");
        std::ofstream js(json_path);
        scfw::write_trace_json(js, trace, config, problem.id);
      }
      const auto& last = trace.iterations.back();
      std::printf("problem      %s\nmethod       %s\ntermination  %s\niterations   %zu\n"
                  "f            %.17g\ngap          %.6e\nlower bound  %.17g\n",
                  problem.id.c_str(), method.c_str(),
                  std::string(scfw::to_string(trace.termination)).c_str(), last.k, last.f,
                  last.gap, scfw::certificate_lower_bound(trace));
      return 0;
    }

    if (*bench) {
      const auto config = scfw::parse_suite_config(slurp(config_path), config_path.parent_path());
      const auto result = scfw::run_suite(config);
      std::size_t failed = 0;
      for (const auto& r : result.runs) {
        if (r.error.empty()) {
          std::printf("%-28s %-12s %-14s k=%-7zu f=%.12g gap=%.3e\n", r.problem.c_str(),
                      r.method.c_str(), r.termination.c_str(), r.iterations, r.final_f,
                      r.final_gap);
        } else {
          ++failed;
          std::printf("%-28s %-12s error: %s\n", r.problem.c_str(), r.method.c_str(),
                      r.error.c_str());
        }
      }
      std::printf("%zu runs (%zu failed); results in %s\n", result.runs.size(), failed,
                  config.out_dir.string().c_str());
      return 0;
    }

    if (*profile) {
      const auto table = scfw::load_trace_directory(trace_dir);
      const auto rows = scfw::compute_profiles(table, eps_grid);
      const fs::path out = profile_out.empty() ? trace_dir / "profiles.csv" : profile_out;
      std::ofstream csv(out);
      scfw::write_profiles_csv(csv, rows);
      std::printf("%zu methods x %zu problems -> %s\n", table.methods().size(),
                  table.problems().size(), out.string().c_str());
      return 0;
    }

    if (*gen) {
      const auto r = scfw::gen_portfolio_data(gen_T, gen_n, gen_seed);
      std::ofstream out(gen_out);
      scfw::write_portfolio_csv(out, r, gen_seed);
      return 0;
    }
  } catch (const scfw::Error& e) {
    std::fprintf(stderr, "scfw: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "scfw: unexpected error: %s\n", e.what());
    return 2;
  }
  return 0;
}
