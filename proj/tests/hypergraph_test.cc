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

#include "domset/hypergraph.h"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace domset {
namespace {

// Mean payoff by summing over all ordered k-tuples of distinct objects, each
// unordered edge counted once per ordering.
double ordered_tuple_mean(const AffinityTensor& t, const SimplexPoint& x) {
  double total = 0.0;
  for (const Hyperedge& e : t.edges()) {
    std::vector<int> perm = e.members;
    do {
      double prod = e.weight;
      for (int i : perm) prod *= x[i];
      total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return total;
}

Eigen::VectorXd baum_eagon_step(const AffinityTensor& t, const SimplexPoint& x) {
  // payoff_i = dF/dx_i / k for the ordered-tuple polynomial F.
  const int n = t.size();
  const int k = t.arity();
  Eigen::VectorXd grad(n);
  const double h = 1e-6;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd up = x.weights(), down = x.weights();
    up[i] += h;
    down[i] -= h;
    // F is homogeneous of degree k; evaluate without simplex projection.
    double fu = 0.0, fd = 0.0;
    for (const Hyperedge& e : t.edges()) {
      double pu = e.weight, pd = e.weight;
      for (int j : e.members) {
        pu *= up[j];
        pd *= down[j];
      }
      fu += pu;
      fd += pd;
    }
    grad[i] = std::tgamma(k + 1) * (fu - fd) / (2 * h) / k;
  }
  Eigen::VectorXd next = x.weights().cwiseProduct(grad);
  return next / next.sum();
}

TEST(AffinityTensor, SortsMembersAndEdges) {
  const AffinityTensor t(4, 3, {{{3, 2, 1}, 0.5}, {{2, 0, 1}, 1.0}});
  ASSERT_EQ(t.edges().size(), 2u);
  EXPECT_EQ(t.edges()[0].members, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(t.edges()[1].members, (std::vector<int>{1, 2, 3}));
}

TEST(AffinityTensor, RejectsInvalidEdges) {
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1}, 1.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1, 1}, 1.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1, 3}, 1.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1, 2}, 0.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1, 2}, -1.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 3, {{{0, 1, 2}, 1.0}, {{2, 1, 0}, 2.0}}), Error);
  EXPECT_THROW(AffinityTensor(3, 1, {}), Error);
  EXPECT_THROW(AffinityTensor(0, 2, {}), Error);
}

TEST(AffinityTensor, RestrictedKeepsInternalEdges) {
  const AffinityTensor t(5, 3, {{{0, 1, 2}, 1.0}, {{2, 3, 4}, 0.5}});
  const AffinityTensor r = t.restricted({2, 3, 4});
  EXPECT_EQ(r.size(), 3);
  ASSERT_EQ(r.edges().size(), 1u);
  EXPECT_EQ(r.edges()[0].members, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(r.edges()[0].weight, 0.5);
}

TEST(TensorPayoffs, SingleEdgeAtBarycenter) {
  const AffinityTensor t(4, 3, {{{0, 1, 2}, 1.0}});
  const Eigen::VectorXd p = tensor_payoffs(t, SimplexPoint::barycenter(4));
  // 2! orderings of the two partners, each weighing 1/4 * 1/4.
  EXPECT_DOUBLE_EQ(p[0], 0.125);
  EXPECT_DOUBLE_EQ(p[1], 0.125);
  EXPECT_DOUBLE_EQ(p[2], 0.125);
  EXPECT_EQ(p[3], 0.0);
}

TEST(TensorPayoffs, EmptyTensorIsZero) {
  const AffinityTensor t(3, 3, {});
  EXPECT_EQ(tensor_payoffs(t, SimplexPoint::barycenter(3)),
            Eigen::VectorXd::Zero(3));
  EXPECT_EQ(tensor_mean_payoff(t, SimplexPoint::barycenter(3)), 0.0);
}

TEST(TensorPayoffs, DimensionMismatchThrows) {
  const AffinityTensor t(3, 2, {});
  EXPECT_THROW(tensor_payoffs(t, SimplexPoint::barycenter(4)), Error);
}

TEST(TensorPayoffs, PairwiseReductionMatchesMatrixProduct) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 8;
    Eigen::MatrixXd w = testing::random_symmetric(rng, n, 0.0, 1.0);
    w.diagonal().setZero();
    const AffinityTensor t = testing::pairwise_tensor(w);
    const SimplexPoint x = testing::random_point(rng, n);
    const Eigen::VectorXd p = tensor_payoffs(t, x);
    for (int i = 0; i < n; ++i) {
      double expected = 0.0;
      for (int j = 0; j < n; ++j) expected += w(i, j) * x[j];
      EXPECT_NEAR(p[i], expected, 1e-14);
    }
    EXPECT_NEAR(tensor_mean_payoff(t, x), testing::quadratic_form(w, std::vector<double>(
        x.weights().data(), x.weights().data() + n)), 1e-14);
  }
}

TEST(TensorPayoffs, MeanMatchesOrderedTupleSum) {
  std::mt19937 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 3 + trial % 2;
    const AffinityTensor t = testing::random_tensor(rng, 6, k, 0.5);
    const SimplexPoint x = testing::random_point(rng, 6);
    EXPECT_NEAR(tensor_mean_payoff(t, x), ordered_tuple_mean(t, x), 1e-13);
  }
}

TEST(TensorCurvature, PairwiseCaseIsTheMatrix) {
  Eigen::MatrixXd w = testing::two_triangles();
  const AffinityTensor t = testing::pairwise_tensor(w);
  EXPECT_EQ(tensor_curvature(t, SimplexPoint::barycenter(6)), w);
}

TEST(TensorCurvature, ProportionalToHessianOfMean) {
  std::mt19937 rng(63);
  const double h = 1e-4;
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 3 + trial % 2;
    const AffinityTensor t = testing::random_tensor(rng, 5, k, 0.6);
    const SimplexPoint x = testing::random_point(rng, 5);
    const Eigen::MatrixXd c = tensor_curvature(t, x);
    auto f = [&](const Eigen::VectorXd& y) {
      double total = 0.0;
      for (const Hyperedge& e : t.edges()) {
        double prod = e.weight;
        for (int j : e.members) prod *= y[j];
        total += prod;
      }
      return std::tgamma(k + 1) * total;
    };
    for (int i = 0; i < 5; ++i) {
      for (int l = 0; l < 5; ++l) {
        if (i == l) continue;
        Eigen::VectorXd pp = x.weights(), pm = pp, mp = pp, mm = pp;
        pp[i] += h; pp[l] += h;
        pm[i] += h; pm[l] -= h;
        mp[i] -= h; mp[l] += h;
        mm[i] -= h; mm[l] -= h;
        const double hess = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
        EXPECT_NEAR(k * (k - 1) * c(i, l), hess, 1e-6);
      }
    }
  }
}

TEST(ExtractHyperCluster, DenseTripleWins) {
  const AffinityTensor t(4, 3, {{{0, 1, 2}, 1.0}, {{1, 2, 3}, 0.1}});
  const Cluster c = extract_hyper_cluster(t, SimplexPoint::barycenter(4), {});
  EXPECT_TRUE(c.converged);
  EXPECT_EQ(c.members.indices(), (std::vector<int>{0, 1, 2}));
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(c.weights[a], 1.0 / 3.0, 1e-6);
  // 3! orderings times (1/3)^3.
  EXPECT_NEAR(c.cohesiveness, 6.0 / 27.0, 1e-9);
}

TEST(ExtractHyperCluster, FullEdgeStaysAtBarycenter) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    const AffinityTensor t(n, n, {{all, 1.0}});
    const Cluster c = extract_hyper_cluster(t, SimplexPoint::barycenter(n), {});
    EXPECT_TRUE(c.converged);
    EXPECT_EQ(c.members.size(), n);
    for (int a = 0; a < n; ++a) EXPECT_NEAR(c.weights[a], 1.0 / n, 1e-12);
  }
}

TEST(ExtractHyperCluster, StalledStateThrows) {
  // Mass only on objects that share no edge.
  const AffinityTensor t(4, 3, {{{0, 1, 2}, 1.0}});
  EXPECT_THROW(
      extract_hyper_cluster(t, testing::point({0.0, 0.0, 0.5, 0.5}), {}),
      Error);
}

TEST(ExtractHyperCluster, VertexStartIsRestPoint) {
  const AffinityTensor t(3, 3, {{{0, 1, 2}, 1.0}});
  const Cluster c = extract_hyper_cluster(t, SimplexPoint::vertex(3, 1), {});
  EXPECT_TRUE(c.converged);
  EXPECT_EQ(c.members.indices(), std::vector<int>{1});
}

TEST(PeelHyperPartition, DisjointTriplesAndIsolatedObject) {
  const AffinityTensor t(7, 3, {{{0, 1, 2}, 1.0}, {{3, 4, 5}, 0.8}});
  const ClusteringResult r = peel_hyper_partition(t, {});
  ASSERT_EQ(r.clusters.size(), 2u);
  EXPECT_EQ(r.clusters[0].members.indices(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(r.clusters[1].members.indices(), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(r.outliers, std::vector<int>{6});
}

// ---- Properties ----

TEST(HypergraphProperties, PairwiseExtractionMatchesMatrixExtraction) {
  std::mt19937 rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 6;
    Eigen::MatrixXd w = testing::random_symmetric(rng, n, 0.0, 1.0);
    w.diagonal().setZero();
    const SimplexPoint x0 = testing::random_point(rng, n);
    const Cluster pair =
        extract_dominant_set(normalize_affinities(w), x0, {});
    const Cluster hyper =
        extract_hyper_cluster(testing::pairwise_tensor(w), x0, {});
    EXPECT_EQ(pair.members, hyper.members) << "trial " << trial;
    if (pair.members != hyper.members) continue;
    for (int a = 0; a < pair.members.size(); ++a) {
      EXPECT_NEAR(pair.weights[a], hyper.weights[a], 1e-8);
    }
    EXPECT_NEAR(pair.cohesiveness, hyper.cohesiveness, 1e-8);
  }
}

TEST(HypergraphProperties, UpdateNeverDecreasesMean) {
  std::mt19937 rng(65);
  for (int trial = 0; trial < 300; ++trial) {
    const AffinityTensor t = testing::random_tensor(rng, 6, 3, 0.5);
    SimplexPoint x = testing::random_point(rng, 6);
    if (!(tensor_mean_payoff(t, x) > 0.0)) continue;
    for (int step = 0; step < 20; ++step) {
      const double before = tensor_mean_payoff(t, x);
      const Eigen::VectorXd p = tensor_payoffs(t, x);
      const SimplexPoint next(x.weights().cwiseProduct(p) / before);
      EXPECT_GE(tensor_mean_payoff(t, next), before - 1e-12);
      x = next;
    }
  }
}

TEST(HypergraphProperties, UpdateMatchesGradientForm) {
  std::mt19937 rng(66);
  for (int trial = 0; trial < 50; ++trial) {
    const AffinityTensor t = testing::random_tensor(rng, 5, 3, 0.7);
    const SimplexPoint x = testing::random_point(rng, 5);
    const double mean = tensor_mean_payoff(t, x);
    if (!(mean > 0.0)) continue;
    const Eigen::VectorXd ours =
        x.weights().cwiseProduct(tensor_payoffs(t, x)) / mean;
    const Eigen::VectorXd oracle = baum_eagon_step(t, x);
    EXPECT_LT((ours - oracle).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(HypergraphProperties, PermutationEquivariance) {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    const AffinityTensor t = testing::random_tensor(rng, n, 3, 0.4);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Hyperedge> moved;
    for (const Hyperedge& e : t.edges()) {
      Hyperedge m{{}, e.weight};
      for (int i : e.members) m.members.push_back(perm[i]);
      moved.push_back(std::move(m));
    }
    const AffinityTensor tp(n, 3, std::move(moved));
    const SimplexPoint x0 = testing::random_point(rng, n);
    Eigen::VectorXd y0(n);
    for (int i = 0; i < n; ++i) y0[perm[i]] = x0[i];
    if (!(tensor_mean_payoff(t, x0) > 0.0)) continue;
    const Cluster a = extract_hyper_cluster(t, x0, {});
    const Cluster b = extract_hyper_cluster(tp, SimplexPoint(y0), {});
    std::vector<int> mapped;
    for (int i : a.members) mapped.push_back(perm[i]);
    EXPECT_EQ(Support(mapped), b.members) << "trial " << trial;
    EXPECT_NEAR(a.cohesiveness, b.cohesiveness, 1e-9);
  }
}

TEST(HypergraphProperties, ZeroCoordinatesStayZero) {
  std::mt19937 rng(68);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const AffinityTensor t = testing::random_tensor(rng, 6, 3, 0.6);
    Eigen::VectorXd w = testing::random_point(rng, 6).weights();
    w[trial % 6] = 0.0;
    w /= w.sum();
    if (!(tensor_mean_payoff(t, SimplexPoint(w)) > 0.0)) continue;
    // Tiny tolerance and a short cap, so the run stops before any escape
    // unless it lands exactly on a fixed point.
    DynamicsConfig cfg;
    cfg.max_iters = 20;
    cfg.tol_convergence = 1e-300;
    Trajectory trace;
    const Cluster c =
        extract_hyper_cluster(t, SimplexPoint(w), cfg, kDefaultSupportEps, &trace);
    if (c.converged) continue;
    ++checked;
    for (const SimplexPoint& s : trace.states) EXPECT_EQ(s[trial % 6], 0.0);
  }
  EXPECT_GE(checked, 50);
}

}  // namespace
}  // namespace domset
