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

#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "test_util.h"

namespace domset {
namespace {

int error_line(auto&& parse) {
  try {
    parse();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

RunManifest manifest() {
  RunManifest m;
  m.command = "cluster";
  m.input_path = "in.csv";
  m.input_format = "csv";
  m.config = {{"mode", std::string("peel")}, {"tol", 1e-10}, {"max_iter", std::int64_t{5}}};
  m.version = "0.1.0";
  m.duration_seconds = 0.25;
  return m;
}

TEST(ParseDenseCsv, ReadsMatrixSkippingComments) {
  const Eigen::MatrixXd m = parse_dense_csv("# header\n0,1.5\n\n-2, 3e-1\n");
  const Eigen::MatrixXd expected = (Eigen::MatrixXd(2, 2) << 0, 1.5, -2, 0.3).finished();
  EXPECT_EQ(m, expected);
}

TEST(ParseDenseCsv, ReportsLineOfError) {
  EXPECT_EQ(error_line([] { parse_dense_csv("0,1\n1,x\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_dense_csv("# c\n0,1\n1,0,2\n"); }), 3);
  EXPECT_EQ(error_line([] { parse_dense_csv("0,1,2\n1,0,2\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_dense_csv("0,nan\n1,0\n"); }), 1);
  EXPECT_EQ(error_line([] { parse_dense_csv("0,1\n1,\n"); }), 2);
  EXPECT_THROW(parse_dense_csv("# only a comment\n"), ParseError);
}

TEST(ParseMatrixMarket, GeneralAndSymmetric) {
  const Eigen::MatrixXd g = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real general\n% note\n2 2 2\n1 2 0.5\n2 1 3\n");
  EXPECT_EQ(g, (Eigen::MatrixXd(2, 2) << 0, 0.5, 3, 0).finished());
  const Eigen::MatrixXd s = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n2 1 1\n3 2 2\n");
  EXPECT_EQ(s, (Eigen::MatrixXd(3, 3) << 0, 1, 0, 1, 0, 2, 0, 2, 0).finished());
}

TEST(ParseMatrixMarket, Errors) {
  const std::string head = "%%MatrixMarket matrix coordinate real general\n";
  EXPECT_EQ(error_line([] { parse_matrix_market("%%MatrixMarket matrix array real general\n"); }), 1);
  EXPECT_EQ(error_line([&] { parse_matrix_market(head + "2 3 1\n1 1 1\n"); }), 2);
  EXPECT_EQ(error_line([&] { parse_matrix_market(head + "2 2 1\n3 1 1\n"); }), 3);
  EXPECT_EQ(error_line([&] { parse_matrix_market(head + "2 2 2\n1 2 1\n1 2 1\n"); }), 4);
  EXPECT_EQ(error_line([&] { parse_matrix_market(head + "2 2 1\n1 2 1\n2 1 1\n"); }), 4);
  EXPECT_THROW(parse_matrix_market(head + "2 2 2\n1 2 1\n"), ParseError);
}

TEST(ParseHyperedges, ConvertsToZeroBased) {
  const AffinityTensor t = parse_hyperedges("4 3\n1 2 3 1.0\n# c\n4 3 2 0.5\n");
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(t.arity(), 3);
  ASSERT_EQ(t.edges().size(), 2u);
  EXPECT_EQ(t.edges()[0].members, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(t.edges()[1].members, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(t.edges()[1].weight, 0.5);
}

TEST(ParseHyperedges, Errors) {
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 1.0\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 3 0\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 3 -1\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 2 1\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 5 1\n"); }), 2);
  EXPECT_EQ(error_line([] { parse_hyperedges("4 3\n1 2 3 1\n3 2 1 1\n"); }), 3);
  EXPECT_EQ(error_line([] { parse_hyperedges("4\n"); }), 1);
}

TEST(ParseState, AcceptsCommasAndWhitespace) {
  const SimplexPoint x = parse_state("0.25, 0.25\n0.5\n");
  EXPECT_EQ(x, testing::point({0.25, 0.25, 0.5}));
  EXPECT_THROW(parse_state("0.5 0.4\n"), Error);
  EXPECT_THROW(parse_state(""), ParseError);
}

TEST(EmitResult, EmptyClustering) {
  ClusteringResult r;
  r.outliers = {0, 1};
  const std::string json = emit_result(r, manifest());
  EXPECT_EQ(json.rfind("{\"clusters\":[],\"outliers\":[1,2],\"shift_applied\":0,"
                       "\"manifest\":{\"tool\":\"domset\",\"version\":\"0.1.0\","
                       "\"command\":\"cluster\",\"input\":{\"path\":\"in.csv\","
                       "\"format\":\"csv\"},\"config\":{\"mode\":\"peel\","
                       "\"tol\":1e-10,\"max_iter\":5},\"shift_applied\":0,"
                       "\"duration_seconds\":0.25}}\n",
                       0),
            0u);
}

TEST(EmitResult, MembersAreOneBased) {
  const ClusteringResult r =
      peel_partition(normalize_affinities(testing::two_triangles()), {});
  const std::string json = emit_result(r, manifest());
  EXPECT_NE(json.find("\"members\":[1,2,3]"), std::string::npos);
  EXPECT_NE(json.find("\"members\":[4,5,6]"), std::string::npos);
  EXPECT_EQ(json.find("\"members\":[0"), std::string::npos);
}

TEST(EmitResult, CandidateSetLayout) {
  const CandidateSet set =
      enumerate_candidates(PayoffMatrix(testing::hawk_dove()), 12);
  const std::string json = emit_result(set, manifest());
  EXPECT_EQ(json.rfind("{\"equilibria\":[{\"point\":[", 0), 0u);
  EXPECT_NE(json.find("\"certificate\":\"ess\""), std::string::npos);
  EXPECT_NE(json.find("\"degenerate_supports\":[]"), std::string::npos);
}

TEST(EmitResult, TrajectoryLayout) {
  DynamicsConfig cfg;
  cfg.max_iters = 2;
  const Trajectory t =
      run(PayoffMatrix(testing::hawk_dove()), testing::point({0.75, 0.25}), cfg);
  const std::string json = emit_result(t, manifest());
  EXPECT_EQ(json.rfind("{\"times\":[0,1,2],\"states\":[[0.75,0.25],", 0), 0u);
  EXPECT_NE(json.find("\"iterations_used\":2,\"shift_applied\":2,"), std::string::npos);
}

TEST(EmitTrajectoryCsv, HeaderAndRows) {
  Trajectory t;
  t.times = {0.0, 1.0, 2.0};
  t.states = {testing::point({0.5, 0.5}), testing::point({0.75, 0.25}),
              testing::point({1.0, 0.0})};
  const std::string csv = emit_trajectory_csv(t);
  EXPECT_EQ(csv, "t,x_1,x_2\n0,0.5,0.5\n1,0.75,0.25\n2,1,0\n");
}

TEST(FormatReal, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ParseClusteringResult, RejectsBadDocuments) {
  EXPECT_THROW(parse_clustering_result("{"), Error);
  EXPECT_THROW(parse_clustering_result("{\"clusters\":[]}"), Error);
  EXPECT_THROW(parse_clustering_result(
                   "{\"clusters\":[],\"outliers\":[0],\"shift_applied\":0}"),
               Error);
}

// ---- Properties ----

TEST(IoProperties, ClusteringResultRoundTripsExactly) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 10;
    const AffinityMatrix w =
        normalize_affinities(testing::random_matrix(rng, n, -1.0, 1.0));
    ClusteringConfig cfg;
    cfg.min_cohesiveness = trial % 3 == 0 ? 0.5 : 0.0;
    const ClusteringResult r = trial % 2 == 0 ? peel_partition(w, cfg)
                                              : enumerate_overlapping(w, cfg);
    const ClusteringResult back = parse_clustering_result(emit_result(r, manifest()));
    ASSERT_EQ(back.clusters.size(), r.clusters.size());
    for (std::size_t c = 0; c < r.clusters.size(); ++c) {
      EXPECT_EQ(back.clusters[c].members, r.clusters[c].members);
      EXPECT_EQ(back.clusters[c].weights, r.clusters[c].weights);
      EXPECT_EQ(back.clusters[c].cohesiveness, r.clusters[c].cohesiveness);
      EXPECT_EQ(back.clusters[c].converged, r.clusters[c].converged);
    }
    EXPECT_EQ(back.outliers, r.outliers);
    EXPECT_EQ(back.shift_applied, r.shift_applied);
  }
}

TEST(IoProperties, CsvRoundTripsThroughFormatReal) {
  std::mt19937 rng(72);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 9;
    const Eigen::MatrixXd m = testing::random_matrix(rng, n, -1e3, 1e3);
    std::ostringstream text;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) text << (j ? "," : "") << format_real(m(i, j));
      text << '\n';
    }
    EXPECT_EQ(parse_dense_csv(text.str()), m);
  }
}

}  // namespace
}  // namespace domset
