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

// k-player clustering game over a k-uniform hypergraph.
//
// Payoffs follow the multilinear realization used in the hypergraph
// clustering literature: an unordered edge e stored once with weight w(e)
// stands for all k! orderings of its members, so
//
//   payoff_i = (k-1)! * sum_{e containing i} w(e) * prod_{j in e, j != i} x_j
//
// and the mean payoff sum_i x_i payoff_i is a homogeneous polynomial with
// nonnegative coefficients. For k = 2 this is exactly the pairwise payoff Wx.

#ifndef DOMSET_HYPERGRAPH_H_
#define DOMSET_HYPERGRAPH_H_

#include <vector>

#include <Eigen/Dense>

#include "domset/clustering.h"
#include "domset/dynamics.h"
#include "domset/game_core.h"

namespace domset {

struct Hyperedge {
  std::vector<int> members;  // sorted, distinct
  double weight = 0.0;
};

class AffinityTensor {
 public:
  // Throws Error on arity mismatch, repeated or out-of-range indices,
  // non-positive or non-finite weights, and duplicate tuples. Member lists
  // need not be sorted.
  AffinityTensor(int n, int k, std::vector<Hyperedge> edges);

  int size() const { return n_; }
  int arity() const { return k_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }

  // Edges lying entirely inside `indices`, relabeled to positions in it.
  AffinityTensor restricted(const std::vector<int>& indices) const;

 private:
  int n_;
  int k_;
  std::vector<Hyperedge> edges_;  // sorted by member tuple
};

Eigen::VectorXd tensor_payoffs(const AffinityTensor& T, const SimplexPoint& x);

double tensor_mean_payoff(const AffinityTensor& T, const SimplexPoint& x);

// Symmetric n x n matrix proportional to the Hessian of the mean payoff:
// entry (i, l), i != l, is (k-2)! * sum_{e containing i, l} w(e) * prod of
// the other members' weights. Equals the affinity matrix when k = 2.
Eigen::MatrixXd tensor_curvature(const AffinityTensor& T, const SimplexPoint& x);

// Multiplicative update x_i <- x_i payoff_i / mean to convergence; the
// cluster is read off as in the pairwise case and its cohesiveness is the
// mean payoff there.
Cluster extract_hyper_cluster(const AffinityTensor& T, const SimplexPoint& x0,
                              const DynamicsConfig& cfg,
                              double support_eps = kDefaultSupportEps,
                              Trajectory* trace = nullptr);

// Peel-off partitioning on the tensor. Objects left without any edge among
// themselves end up as outliers.
ClusteringResult peel_hyper_partition(const AffinityTensor& T,
                                      const ClusteringConfig& cfg);

}  // namespace domset

#endif  // DOMSET_HYPERGRAPH_H_
