// Copyright 2026 The domset Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "domset/io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <utility>

#include "json.hpp"

namespace domset {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits into lines, keeping 1-based line numbers.
std::vector<std::pair<int, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 1;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(number++, line);
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view token, int line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "not a number: '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "non-finite value: '" + std::string(token) + "'");
  }
  return value;
}

long long parse_integer(std::string_view token, int line) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Minimal writer for the fixed-layout JSON documents below.
class JsonWriter {
 public:
  void open_object() { separate(); out_ += '{'; first_ = true; }
  void close_object() { out_ += '}'; first_ = false; }
  void open_array() { separate(); out_ += '['; first_ = true; }
  void close_array() { out_ += ']'; first_ = false; }

  void key(std::string_view k) {
    separate();
    write_string(k);
    out_ += ':';
    first_ = true;
  }

  void value(double v) { separate(); out_ += format_real(v); }
  void value(bool v) { separate(); out_ += v ? "true" : "false"; }
  void value(std::int64_t v) { separate(); out_ += std::to_string(v); }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(std::string_view v) { separate(); write_string(v); }
  void value(const char* v) { value(std::string_view(v)); }
  void value(const std::string& v) { value(std::string_view(v)); }

  void index_array(const std::vector<int>& zero_based) {
    open_array();
    for (int i : zero_based) value(i + 1);
    close_array();
  }
  void real_array(const Eigen::VectorXd& v) {
    open_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) value(v[i]);
    close_array();
  }

  std::string finish() { return std::move(out_) + "\n"; }

 private:
  void separate() {
    if (!first_) out_ += ',';
    first_ = false;
  }

  void write_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  bool first_ = true;
};

void write_manifest(JsonWriter& w, const RunManifest& m) {
  w.key("manifest");
  w.open_object();
  w.key("tool");
  w.value("domset");
  w.key("version");
  w.value(m.version);
  w.key("command");
  w.value(m.command);
  w.key("input");
  w.open_object();
  w.key("path");
  w.value(m.input_path);
  w.key("format");
  w.value(m.input_format);
  w.close_object();
  w.key("config");
  w.open_object();
  for (const auto& [k, v] : m.config) {
    w.key(k);
    std::visit([&](const auto& x) { w.value(x); }, v);
  }
  w.close_object();
  w.key("shift_applied");
  w.value(m.shift_applied);
  w.key("duration_seconds");
  w.value(m.duration_seconds);
  w.close_object();
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Eigen::MatrixXd parse_dense_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  int last_line = 0;
  for (const auto& [number, raw] : lines_of(text)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    last_line = number;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_real(line.substr(start, comma - start), number));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(number, "ragged row: expected " +
                                   std::to_string(rows.front().size()) +
                                   " columns, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(1, "no matrix rows");
  if (rows.size() != rows.front().size()) {
    throw ParseError(last_line, "matrix is not square: " +
                                    std::to_string(rows.size()) + " rows, " +
                                    std::to_string(rows.front().size()) +
                                    " columns");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd parse_matrix_market(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, "empty MatrixMarket file");
  const auto header = split_ws(lines.front().second);
  if (header.size() != 5 || header[0] != "%%MatrixMarket") {
    throw ParseError(1, "expected '%%MatrixMarket matrix coordinate real "
                        "general|symmetric' header");
  }
  if (lower(header[1]) != "matrix" || lower(header[2]) != "coordinate" ||
      lower(header[3]) != "real") {
    throw ParseError(1, "unsupported MatrixMarket header field");
  }
  const std::string symmetry = lower(header[4]);
  if (symmetry != "general" && symmetry != "symmetric") {
    throw ParseError(1, "unsupported MatrixMarket symmetry '" +
                            std::string(header[4]) + "'");
  }
  const bool symmetric = symmetry == "symmetric";

  Eigen::MatrixXd m;
  long long n = -1;
  long long expected = 0;
  long long seen_entries = 0;
  std::set<std::pair<long long, long long>> seen;
  int last_line = 1;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const int number = lines[li].first;
    const std::string_view line = trim(lines[li].second);
    if (line.empty() || line.front() == '%') continue;
    last_line = number;
    const auto tokens = split_ws(line);
    if (n < 0) {
      if (tokens.size() != 3) throw ParseError(number, "expected 'rows cols entries'");
      const long long rows = parse_integer(tokens[0], number);
      const long long cols = parse_integer(tokens[1], number);
      expected = parse_integer(tokens[2], number);
      if (rows < 1 || rows != cols) {
        throw ParseError(number, "matrix must be square with n >= 1");
      }
      if (expected < 0) throw ParseError(number, "negative entry count");
      n = rows;
      m = Eigen::MatrixXd::Zero(n, n);
      continue;
    }
    if (tokens.size() != 3) throw ParseError(number, "expected 'row col value'");
    const long long i = parse_integer(tokens[0], number);
    const long long j = parse_integer(tokens[1], number);
    const double v = parse_real(tokens[2], number);
    if (i < 1 || i > n || j < 1 || j > n) {
      throw ParseError(number, "index (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") out of range for " +
                                   std::to_string(n) + "x" + std::to_string(n));
    }
    const auto key = symmetric ? std::make_pair(std::max(i, j), std::min(i, j))
                               : std::make_pair(i, j);
    if (!seen.insert(key).second) throw ParseError(number, "duplicate entry");
    if (++seen_entries > expected) {
      throw ParseError(number, "more entries than declared");
    }
    m(i - 1, j - 1) = v;
    if (symmetric) m(j - 1, i - 1) = v;
  }
  if (n < 0) throw ParseError(last_line, "missing size line");
  if (seen_entries != expected) {
    throw ParseError(last_line, "declared " + std::to_string(expected) +
                                    " entries, found " +
                                    std::to_string(seen_entries));
  }
  return m;
}

AffinityTensor parse_hyperedges(std::string_view text) {
  long long n = -1;
  long long k = -1;
  std::vector<Hyperedge> edges;
  std::map<std::vector<int>, int> first_seen;
  for (const auto& [number, raw] : lines_of(text)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = split_ws(line);
    if (n < 0) {
      if (tokens.size() != 2) throw ParseError(number, "expected 'n k'");
      n = parse_integer(tokens[0], number);
      k = parse_integer(tokens[1], number);
      if (n < 1) throw ParseError(number, "n must be at least 1");
      if (k < 2) throw ParseError(number, "k must be at least 2");
      continue;
    }
    if (static_cast<long long>(tokens.size()) != k + 1) {
      throw ParseError(number, "expected " + std::to_string(k) +
                                   " indices and a weight, got " +
                                   std::to_string(tokens.size()) + " fields");
    }
    Hyperedge e;
    for (long long a = 0; a < k; ++a) {
      const long long idx = parse_integer(tokens[a], number);
      if (idx < 1 || idx > n) throw ParseError(number, "index out of range");
      e.members.push_back(static_cast<int>(idx - 1));
    }
    e.weight = parse_real(tokens[k], number);
    if (!(e.weight > 0.0)) throw ParseError(number, "nonpositive weight");
    std::vector<int> sorted = e.members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(number, "repeated index in hyperedge");
    }
    if (const auto [it, inserted] = first_seen.emplace(sorted, number); !inserted) {
      throw ParseError(number, "duplicate hyperedge (first at line " +
                                   std::to_string(it->second) + ")");
    }
    edges.push_back(std::move(e));
  }
  if (n < 0) throw ParseError(1, "missing 'n k' line");
  return AffinityTensor(static_cast<int>(n), static_cast<int>(k),
                        std::move(edges));
}

SimplexPoint parse_state(std::string_view text) {
  std::vector<double> values;
  for (const auto& [number, raw] : lines_of(text)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string cleaned(line);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    for (std::string_view token : split_ws(cleaned)) {
      values.push_back(parse_real(token, number));
    }
  }
  if (values.empty()) throw ParseError(1, "no state weights");
  return SimplexPoint(
      Eigen::Map<const Eigen::VectorXd>(values.data(),
                                        static_cast<Eigen::Index>(values.size())));
}

std::string emit_result(const ClusteringResult& result,
                        const RunManifest& manifest) {
  JsonWriter w;
  w.open_object();
  w.key("clusters");
  w.open_array();
  for (const Cluster& c : result.clusters) {
    w.open_object();
    w.key("members");
    w.index_array(c.members.indices());
    w.key("weights");
    w.real_array(c.weights.weights());
    w.key("cohesiveness");
    w.value(c.cohesiveness);
    w.key("converged");
    w.value(c.converged);
    w.close_object();
  }
  w.close_array();
  w.key("outliers");
  w.index_array(result.outliers);
  w.key("shift_applied");
  w.value(result.shift_applied);
  write_manifest(w, manifest);
  w.close_object();
  return w.finish();
}

std::string emit_result(const Trajectory& trajectory,
                        const RunManifest& manifest) {
  JsonWriter w;
  w.open_object();
  w.key("times");
  w.open_array();
  for (double t : trajectory.times) w.value(t);
  w.close_array();
  w.key("states");
  w.open_array();
  for (const SimplexPoint& s : trajectory.states) w.real_array(s.weights());
  w.close_array();
  w.key("converged");
  w.value(trajectory.converged);
  w.key("iterations_used");
  w.value(trajectory.iterations_used);
  w.key("shift_applied");
  w.value(trajectory.shift_applied);
  write_manifest(w, manifest);
  w.close_object();
  return w.finish();
}

std::string emit_result(const CandidateSet& candidates,
                        const RunManifest& manifest) {
  JsonWriter w;
  w.open_object();
  w.key("equilibria");
  w.open_array();
  for (const EquilibriumReport& r : candidates.reports) {
    w.open_object();
    w.key("point");
    w.real_array(r.point.weights());
    w.key("support");
    w.index_array(r.support.indices());
    w.key("stationary");
    w.value(r.stationary);
    w.key("nash");
    w.value(r.nash);
    w.key("ess");
    w.value(r.ess);
    w.key("tol");
    w.value(r.tol);
    w.key("certificate");
    w.value(r.certificate);
    w.close_object();
  }
  w.close_array();
  w.key("degenerate_supports");
  w.open_array();
  for (const Support& s : candidates.degenerate_supports) w.index_array(s.indices());
  w.close_array();
  write_manifest(w, manifest);
  w.close_object();
  return w.finish();
}

std::string emit_trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t";
  const int n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  for (int i = 1; i <= n; ++i) out += ",x_" + std::to_string(i);
  out += '\n';
  for (std::size_t r = 0; r < trajectory.states.size(); ++r) {
    out += format_real(trajectory.times[r]);
    const SimplexPoint& s = trajectory.states[r];
    for (int i = 0; i < s.size(); ++i) {
      out += ',';
      out += format_real(s[i]);
    }
    out += '\n';
  }
  return out;
}

ClusteringResult parse_clustering_result(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid result JSON: ") + e.what());
  }
  auto to_zero_based = [](const nlohmann::json& arr) {
    std::vector<int> out;
    for (const auto& v : arr) {
      const int i = v.get<int>();
      if (i < 1) throw Error("result index must be 1-based");
      out.push_back(i - 1);
    }
    return out;
  };
  try {
    ClusteringResult result;
    for (const auto& c : doc.at("clusters")) {
      const std::vector<double> w = c.at("weights").get<std::vector<double>>();
      Eigen::VectorXd weights =
          Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
      result.clusters.push_back(Cluster{Support(to_zero_based(c.at("members"))),
                                        SimplexPoint(std::move(weights)),
                                        c.at("cohesiveness").get<double>(), 0,
                                        c.at("converged").get<bool>()});
    }
    result.outliers = to_zero_based(doc.at("outliers"));
    result.shift_applied = doc.at("shift_applied").get<double>();
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed result JSON: ") + e.what());
  }
}

}  // namespace domset
