#include "scfw/trace_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "scfw/errors.hpp"

namespace scfw {

namespace {

constexpr std::string_view kHeader = "k,f,gap,alpha,e,L,time_ns";

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "bad number '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "bad number '" + s + "'");
  return v;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kHeader << '\n';
  for (const auto& r : trace.iterations) {
    out << r.k << ',' << format_real(r.f) << ',' << format_real(r.gap) << ','
        << format_real(r.alpha) << ',' << format_real(r.e) << ','
        << (r.lipschitz ? format_real(*r.lipschitz) : std::string()) << ',' << r.time_ns << '\n';
  }
}

RunTrace read_trace_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw ParseError(1, "expected header '" + std::string(kHeader) + "'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != 7) throw ParseError(lineno, "expected 7 fields");
    IterationRecord r;
    try {
      r.k = std::stoull(fields[0]);
      r.time_ns = std::stoll(fields[6]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad integer field");
    }
    r.f = parse_real(fields[1], lineno);
    r.gap = parse_real(fields[2], lineno);
    r.alpha = parse_real(fields[3], lineno);
    r.e = parse_real(fields[4], lineno);
    if (!fields[5].empty()) r.lipschitz = parse_real(fields[5], lineno);
    trace.iterations.push_back(r);
  }
  return trace;
}

void write_trace_json(std::ostream& out, const RunTrace& trace, const RunConfig& config,
                      std::string_view problem) {
  nlohmann::json doc;
  doc["problem"] = problem;
  doc["method"] = trace.method;
  doc["termination"] = to_string(trace.termination);
  doc["config"] = {{"epsilon", config.epsilon},
                   {"max_iter", config.max_iter},
                   {"rule", to_string(config.rule)},
                   {"record_times", config.record_times},
                   {"seed", config.seed},
                   {"gamma_u", config.gamma_u},
                   {"gamma_d", config.gamma_d}};
  doc["initial_lipschitz"] = optional_json(trace.initial_lipschitz);
  doc["eval_count"] = trace.eval_count;
  auto& rows = doc["iterations"] = nlohmann::json::array();
  for (const auto& r : trace.iterations) {
    rows.push_back({{"k", r.k},
                    {"f", r.f},
                    {"gap", r.gap},
                    {"alpha", r.alpha},
                    {"e", r.e},
                    {"L", optional_json(r.lipschitz)},
                    {"time_ns", r.time_ns},
                    {"model_decrease", r.model_decrease},
                    {"evals", r.evals},
                    {"radius", optional_json(r.radius)},
                    {"contraction", optional_json(r.contraction)}});
  }
  doc["final_x"] = trace.final_x;
  out << doc.dump(1) << '\n';
}

}  // namespace scfw
