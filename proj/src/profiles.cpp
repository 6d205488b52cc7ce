#include "scfw/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "scfw/errors.hpp"
#include "scfw/trace_io.hpp"

namespace scfw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Measure>
std::vector<double> mean_ratio(const ProfileTable& table, Measure measure) {
  const auto methods = table.methods();
  const auto problems = table.problems();
  std::vector<double> sum(methods.size(), 0.0);
  std::vector<std::size_t> count(methods.size(), 0);
  bool any = false;
  for (const auto& p : problems) {
    std::vector<std::optional<double>> vals(methods.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < methods.size(); ++i) {
      vals[i] = measure(methods[i], p);
      if (vals[i]) best = std::min(best, *vals[i]);
    }
    if (!std::isfinite(best)) continue;
    any = true;
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (!vals[i]) continue;
      sum[i] += *vals[i] / best;
      ++count[i];
    }
  }
  if (!any) throw PreconditionError("no method reaches the requested relative error on any problem");
  std::vector<double> out(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i)
    out[i] = count[i] ? sum[i] / static_cast<double>(count[i]) : kNaN;
  return out;
}

}  // namespace

double relative_error(double f_k, double f_best) {
  if (std::abs(f_best) < 1e-300) throw DomainError("relative_error: reference value is zero");
  return (f_k - f_best) / std::abs(f_best);
}

void ProfileTable::add(const std::string& method, const std::string& problem,
                       const RunTrace& trace) {
  ProfileSeries s;
  for (const auto& r : trace.iterations) {
    s.k.push_back(r.k);
    s.f.push_back(r.f);
    s.time_ns.push_back(r.time_ns);
  }
  runs_[{method, problem}] = std::move(s);
}

std::vector<std::string> ProfileTable::methods() const {
  std::set<std::string> out;
  for (const auto& [key, _] : runs_) out.insert(key.first);
  return {out.begin(), out.end()};
}

std::vector<std::string> ProfileTable::problems() const {
  std::set<std::string> out;
  for (const auto& [key, _] : runs_) out.insert(key.second);
  return {out.begin(), out.end()};
}

bool ProfileTable::has_run(const std::string& method, const std::string& problem) const {
  return runs_.contains({method, problem});
}

std::optional<double> ProfileTable::best_value(const std::string& problem) const {
  std::optional<double> best;
  for (const auto& [key, s] : runs_) {
    if (key.second != problem) continue;
    for (double f : s.f)
      if (std::isfinite(f) && (!best || f < *best)) best = f;
  }
  return best;
}

std::vector<double> ProfileTable::rel_err_series(const std::string& method,
                                                 const std::string& problem) const {
  const auto it = runs_.find({method, problem});
  if (it == runs_.end()) return {};
  const auto best = best_value(problem);
  std::vector<double> out;
  if (!best) return out;
  for (double f : it->second.f) out.push_back(relative_error(f, *best));
  return out;
}

std::optional<std::size_t> ProfileTable::first_hit(const std::string& method,
                                                   const std::string& problem, double eps) const {
  const auto it = runs_.find({method, problem});
  if (it == runs_.end()) return std::nullopt;
  const auto best = best_value(problem);
  if (!best) return std::nullopt;
  const auto& f = it->second.f;
  for (std::size_t idx = 0; idx < f.size(); ++idx)
    if (relative_error(f[idx], *best) <= eps) return idx;
  return std::nullopt;
}

std::optional<std::size_t> ProfileTable::iterations_to(const std::string& method,
                                                       const std::string& problem,
                                                       double eps) const {
  const auto idx = first_hit(method, problem, eps);
  if (!idx) return std::nullopt;
  return runs_.at({method, problem}).k[*idx];
}

std::optional<std::int64_t> ProfileTable::time_to(const std::string& method,
                                                  const std::string& problem, double eps) const {
  const auto idx = first_hit(method, problem, eps);
  if (!idx) return std::nullopt;
  return runs_.at({method, problem}).time_ns[*idx];
}

std::vector<double> fraction_solved(const ProfileTable& table, double eps) {
  const auto methods = table.methods();
  const auto problems = table.problems();
  std::vector<double> out;
  for (const auto& m : methods) {
    std::size_t solved = 0;
    for (const auto& p : problems)
      if (table.iterations_to(m, p, eps)) ++solved;
    out.push_back(problems.empty() ? 0.0
                                   : static_cast<double>(solved) / static_cast<double>(problems.size()));
  }
  return out;
}

std::vector<double> iteration_ratio(const ProfileTable& table, double eps) {
  return mean_ratio(table, [&](const std::string& m, const std::string& p) -> std::optional<double> {
    const auto n = table.iterations_to(m, p, eps);
    if (!n) return std::nullopt;
    return static_cast<double>(std::max<std::size_t>(*n, 1));
  });
}

std::vector<double> time_ratio(const ProfileTable& table, double eps) {
  return mean_ratio(table, [&](const std::string& m, const std::string& p) -> std::optional<double> {
    const auto t = table.time_to(m, p, eps);
    if (!t) return std::nullopt;
    return static_cast<double>(std::max<std::int64_t>(*t, 1));
  });
}

std::vector<ProfileRow> compute_profiles(const ProfileTable& table,
                                         const std::vector<double>& eps_grid) {
  const auto methods = table.methods();
  std::vector<ProfileRow> rows;
  for (double eps : eps_grid) {
    const auto frac = fraction_solved(table, eps);
    std::vector<double> iters(methods.size(), kNaN);
    std::vector<double> times(methods.size(), kNaN);
    try {
      iters = iteration_ratio(table, eps);
      times = time_ratio(table, eps);
    } catch (const PreconditionError&) {
      // Nobody reached eps; ratios stay NaN.
    }
    for (std::size_t i = 0; i < methods.size(); ++i)
      rows.push_back({methods[i], eps, frac[i], iters[i], times[i]});
  }
  return rows;
}

void write_profiles_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  out << "method,eps,frac_solved,iter_ratio,time_ratio\n";
  for (const auto& r : rows)
    out << r.method << ',' << format_real(r.eps) << ',' << format_real(r.frac_solved) << ','
        << format_real(r.iter_ratio) << ',' << format_real(r.time_ratio) << '\n';
}

}  // namespace scfw
