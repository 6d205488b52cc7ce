#include "scfw/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scfw/errors.hpp"
#include "scfw/libsvm.hpp"
#include "scfw/problems.hpp"
#include "scfw/random.hpp"
#include "scfw/trace_io.hpp"

namespace scfw {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

LibsvmData load_libsvm(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_libsvm(in);
}

std::string format_compact(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

const std::string kTraceSeparator = "__";

}  // namespace

std::string default_problem_id(const ProblemSpec& spec) {
  if (spec.type == "portfolio") {
    if (!spec.data.empty()) return "portfolio_" + spec.data.stem().string();
    return "portfolio_T" + std::to_string(spec.T) + "_n" + std::to_string(spec.n) + "_s" +
           std::to_string(spec.seed);
  }
  if (spec.type == "poisson")
    return "poisson_" + spec.data.stem().string() + "_R" + format_compact(spec.radius);
  if (spec.type == "logistic") {
    if (!spec.data.empty()) return "logistic_" + spec.data.stem().string();
    return "logistic_N" + std::to_string(spec.N) + "_n" + std::to_string(spec.n) + "_s" +
           std::to_string(spec.seed);
  }
  if (spec.type == "barrier") return "barrier_n" + std::to_string(spec.n);
  throw InputError("unknown problem type '" + spec.type + "'");
}

void gen_logistic_data(std::size_t N, std::size_t n, std::uint64_t seed, DenseMatrix& features,
                       std::vector<double>& labels) {
  if (N == 0 || n == 0) throw InputError("gen_logistic_data: N and n must be positive");
  NormalStream rng(seed);
  Vector w(n);
  for (double& v : w) v = rng.normal();
  features = DenseMatrix(N, n);
  for (double& v : features.data) v = rng.normal();
  labels.assign(N, 1.0);
  for (std::size_t i = 0; i < N; ++i)
    labels[i] = kernels::dot(features.row(i), w) >= 0.0 ? 1.0 : -1.0;
}

Problem make_problem(const ProblemSpec& spec) {
  Problem p;
  p.id = spec.id.empty() ? default_problem_id(spec) : spec.id;
  if (p.id.find(kTraceSeparator) != std::string::npos)
    throw InputError("problem id must not contain '" + kTraceSeparator + "'");

  if (spec.type == "portfolio") {
    DenseMatrix r;
    if (!spec.data.empty()) {
      std::ifstream in(spec.data);
      if (!in) throw InputError("cannot open " + spec.data.string());
      r = read_portfolio_csv(in);
    } else {
      r = gen_portfolio_data(spec.T, spec.n, spec.seed);
    }
    const std::size_t n = r.cols;
    p.oracle = std::make_unique<PortfolioOracle>(std::move(r));
    p.set = std::make_unique<Simplex>(n);
  } else if (spec.type == "poisson") {
    if (spec.data.empty()) throw InputError("poisson problems need a LIBSVM data file");
    const LibsvmData d = load_libsvm(spec.data);
    DenseMatrix w = d.to_dense();
    // Classification labels are not counts; every sample counts once.
    std::vector<double> y(w.rows, 1.0);
    const std::size_t n = w.cols;
    p.oracle = std::make_unique<PoissonOracle>(std::move(w), std::move(y));
    p.set = std::make_unique<NonnegL1Ball>(n, spec.radius);
  } else if (spec.type == "logistic") {
    DenseMatrix features;
    std::vector<double> labels;
    if (!spec.data.empty()) {
      const LibsvmData d = load_libsvm(spec.data);
      features = d.to_dense();
      labels = d.labels;
    } else {
      gen_logistic_data(spec.N, spec.n, spec.seed, features, labels);
    }
    const double gamma = spec.gamma > 0.0 ? spec.gamma : 1.0 / static_cast<double>(features.rows);
    const std::size_t n = features.cols;
    p.oracle = std::make_unique<LogisticOracle>(std::move(features), std::move(labels),
                                                spec.intercept, gamma);
    p.set = std::make_unique<L1Ball>(n, spec.radius);
  } else if (spec.type == "barrier") {
    p.oracle = std::make_unique<LogBarrierOracle>(spec.n);
    p.set = std::make_unique<Simplex>(spec.n);
  } else {
    throw InputError("unknown problem type '" + spec.type + "'");
  }

  const Vector x0 = p.set->start_point();
  if (!p.oracle->in_domain(x0))
    throw PreconditionError("problem '" + p.id + "': start point is outside dom f");
  return p;
}

RunTrace run_method(const std::string& method, const Problem& problem, const RunConfig& base) {
  RunConfig config = base;
  if (method == "lloo") {
    if (dynamic_cast<const Simplex*>(problem.set.get()) == nullptr)
      throw PreconditionError("the LLOO method needs a simplex-constrained problem");
    LlooConfig lc;
    lc.sigma_f = estimate_sigma(*problem.oracle, problem.set->start_point());
    return lloo_fw_solve(*problem.oracle, config, lc);
  }
  config.rule = parse_step_rule(method);
  return fw_solve(*problem.oracle, *problem.set, config);
}

SuiteConfig parse_suite_config(const std::string& json_text, const fs::path& base_dir) {
  SuiteConfig cfg;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("suite config: ") + e.what());
  }
  try {
    if (doc.contains("methods")) cfg.methods = doc.at("methods").get<std::vector<std::string>>();
    if (doc.contains("eps_grid")) cfg.eps_grid = doc.at("eps_grid").get<std::vector<double>>();
    if (doc.contains("max_iter")) cfg.max_iter = doc.at("max_iter").get<std::size_t>();
    if (doc.contains("gap_tol")) cfg.gap_tol = doc.at("gap_tol").get<double>();
    if (doc.contains("seeds")) cfg.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("out_dir")) {
      fs::path out = doc.at("out_dir").get<std::string>();
      cfg.out_dir = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
    }
    for (const auto& pj : doc.at("problems")) {
      ProblemSpec spec;
      spec.type = pj.value("type", spec.type);
      spec.id = pj.value("id", spec.id);
      spec.T = pj.value("T", spec.T);
      spec.n = pj.value("n", spec.n);
      spec.N = pj.value("N", spec.N);
      spec.radius = pj.value("radius", spec.radius);
      spec.intercept = pj.value("mu", spec.intercept);
      spec.gamma = pj.value("gamma", spec.gamma);
      if (pj.contains("data")) {
        fs::path d = pj.at("data").get<std::string>();
        spec.data = d.is_relative() && !base_dir.empty() ? base_dir / d : d;
      }
      const bool seeded_type = spec.type == "portfolio" || spec.type == "logistic";
      if (pj.contains("seed") || !seeded_type || !spec.data.empty() || cfg.seeds.empty()) {
        spec.seed = pj.value("seed", spec.seed);
        cfg.problems.push_back(spec);
      } else {
        for (std::uint64_t s : cfg.seeds) {
          ProblemSpec copy = spec;
          copy.seed = s;
          if (!copy.id.empty()) copy.id += "_s" + std::to_string(s);
          cfg.problems.push_back(copy);
        }
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("suite config: ") + e.what());
  }
  if (cfg.problems.empty()) throw InputError("suite config: no problems");
  if (cfg.methods.empty()) throw InputError("suite config: no methods");
  return cfg;
}

SuiteResult run_suite(const SuiteConfig& config) {
  fs::create_directories(config.out_dir);
  SuiteResult result;

  RunConfig base;
  base.epsilon = config.gap_tol;
  base.max_iter = config.max_iter;

  json runs = json::array();
  for (const auto& spec : config.problems) {
    std::string problem_id;
    Problem problem;
    std::string setup_error;
    try {
      problem = make_problem(spec);
      problem_id = problem.id;
    } catch (const Error& e) {
      setup_error = e.what();
      problem_id = spec.id.empty() ? spec.type : spec.id;
    }
    for (const auto& method : config.methods) {
      RunSummary s;
      s.problem = problem_id;
      s.method = method;
      RunTrace trace;
      trace.method = method;
      if (!setup_error.empty()) {
        s.error = setup_error;
      } else {
        try {
          trace = run_method(method, problem, base);
        } catch (const Error& e) {
          s.error = e.what();
          trace = RunTrace{};
          trace.method = method;
        }
      }
      if (s.error.empty() && !trace.iterations.empty()) {
        const auto& last = trace.iterations.back();
        s.termination = std::string(to_string(trace.termination));
        s.iterations = last.k;
        s.final_f = last.f;
        s.final_gap = last.gap;
        s.lower_bound = certificate_lower_bound(trace);
        s.time_ns = last.time_ns;
      }
      {
        std::ofstream out(config.out_dir / (problem_id + kTraceSeparator + method + ".csv"));
        write_trace_csv(out, trace);
      }
      result.table.add(method, problem_id, trace);
      json rj = {{"problem", s.problem}, {"method", s.method}};
      if (s.error.empty()) {
        rj.update({{"termination", s.termination},
                   {"iterations", s.iterations},
                   {"final_f", s.final_f},
                   {"final_gap", s.final_gap},
                   {"lower_bound", s.lower_bound},
                   {"time_ns", s.time_ns}});
      } else {
        rj["error"] = s.error;
      }
      runs.push_back(rj);
      result.runs.push_back(std::move(s));
    }
  }

  result.profiles = compute_profiles(result.table, config.eps_grid);
  {
    std::ofstream out(config.out_dir / "profiles.csv");
    write_profiles_csv(out, result.profiles);
  }

  json summary;
  summary["config"] = {{"methods", config.methods},
                       {"eps_grid", config.eps_grid},
                       {"max_iter", config.max_iter},
                       {"gap_tol", config.gap_tol},
                       {"seeds", config.seeds},
                       {"out_dir", config.out_dir.string()}};
  summary["runs"] = runs;
  json profiles = json::array();
  for (const auto& r : result.profiles) {
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    profiles.push_back({{"method", r.method},
                        {"eps", r.eps},
                        {"frac_solved", r.frac_solved},
                        {"iter_ratio", num(r.iter_ratio)},
                        {"time_ratio", num(r.time_ratio)}});
  }
  summary["profiles"] = profiles;
  std::ofstream(config.out_dir / "summary.json") << summary.dump(2) << '\n';
  return result;
}

ProfileTable load_trace_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  ProfileTable table;
  for (const auto& path : files) {
    const std::string stem = path.stem().string();
    const auto sep = stem.rfind(kTraceSeparator);
    if (sep == std::string::npos) continue;  // profiles.csv and foreign files
    std::ifstream in(path);
    RunTrace trace = read_trace_csv(in);
    table.add(stem.substr(sep + kTraceSeparator.size()), stem.substr(0, sep), trace);
  }
  return table;
}

}  // namespace scfw
