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

// File formats. Indices are 1-based in every file and 0-based in memory.
// JSON output is compact, with a fixed key order and reals written with 17
// significant digits so that parsing reproduces them bit for bit.

#ifndef DOMSET_IO_H_
#define DOMSET_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "domset/clustering.h"
#include "domset/dynamics.h"
#include "domset/equilibria.h"
#include "domset/game_core.h"
#include "domset/hypergraph.h"

namespace domset {

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Rows of comma-separated reals; lines starting with '#' and blank lines
// are skipped.
Eigen::MatrixXd parse_dense_csv(std::string_view text);

// "%%MatrixMarket matrix coordinate real general|symmetric" with 1-based
// triplets. Unlisted entries are zero; symmetric files are mirrored.
Eigen::MatrixXd parse_matrix_market(std::string_view text);

// First line "n k", then one "i_1 ... i_k weight" line per hyperedge.
AffinityTensor parse_hyperedges(std::string_view text);

// Whitespace- or comma-separated weights, for an initial state file.
SimplexPoint parse_state(std::string_view text);

using ManifestValue = std::variant<bool, std::int64_t, double, std::string>;

struct RunManifest {
  std::string command;
  std::string input_path;
  std::string input_format;
  std::vector<std::pair<std::string, ManifestValue>> config;
  double shift_applied = 0.0;
  std::string version;
  // Excluded from determinism checks; always written last.
  double duration_seconds = 0.0;
};

std::string emit_result(const ClusteringResult& result,
                        const RunManifest& manifest);
std::string emit_result(const Trajectory& trajectory,
                        const RunManifest& manifest);
std::string emit_result(const CandidateSet& candidates,
                        const RunManifest& manifest);

// Header "t,x_1,...,x_n" then one row per recorded state.
std::string emit_trajectory_csv(const Trajectory& trajectory);

// Reads back the clusters, outliers and shift written by emit_result.
// Per-cluster iteration counts are not serialized and come back as 0.
ClusteringResult parse_clustering_result(std::string_view json);

// Formats a real with 17 significant digits.
std::string format_real(double v);

}  // namespace domset

#endif  // DOMSET_IO_H_
