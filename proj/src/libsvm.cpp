#include "scfw/libsvm.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "scfw/errors.hpp"
#include "scfw/trace_io.hpp"

namespace scfw {

namespace {

double parse_number(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty()) throw ParseError(line, std::string("empty ") + what);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || errno == ERANGE)
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  if (tok.empty()) throw ParseError(line, "empty feature index");
  std::size_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') throw ParseError(line, "malformed feature index '" + tok + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  if (v == 0) throw ParseError(line, "feature index must be >= 1");
  return v;
}

}  // namespace

DenseMatrix LibsvmData::to_dense(std::size_t min_cols) const {
  DenseMatrix m(rows.size(), std::max(n_features, min_cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) m(i, e.index) = e.value;
  return m;
}

LibsvmData parse_libsvm(std::istream& in) {
  LibsvmData data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    data.labels.push_back(parse_number(tok, lineno, "label"));
    auto& row = data.rows.emplace_back();
    std::size_t prev = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "expected index:value, got '" + tok + "'");
      const std::size_t idx = parse_index(tok.substr(0, colon), lineno);
      if (idx <= prev) throw ParseError(lineno, "feature indices must be strictly ascending");
      prev = idx;
      row.push_back({idx - 1, parse_number(tok.substr(colon + 1), lineno, "feature value")});
      data.n_features = std::max(data.n_features, idx);
    }
  }
  return data;
}

void write_libsvm(std::ostream& out, const LibsvmData& data) {
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    out << format_real(data.labels[i]);
    for (const auto& e : data.rows[i]) out << ' ' << (e.index + 1) << ':' << format_real(e.value);
    out << '\n';
  }
}

}  // namespace scfw
