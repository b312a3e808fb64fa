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

// Dominant-set clustering.
//
// Objects are the pure strategies of a symmetric game whose payoffs are the
// pairwise affinities. A cluster is the support of a stable state reached by
// the discrete replicator dynamics, and its cohesiveness is x'Wx at that
// state. Clusters are obtained either by peeling (extract, delete members,
// repeat on the rest) or by restarting from vertex-biased states on the full
// matrix, which can return overlapping clusters.

#ifndef DOMSET_CLUSTERING_H_
#define DOMSET_CLUSTERING_H_

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "domset/dynamics.h"
#include "domset/game_core.h"

namespace domset {

// Pairwise similarities with a zero diagonal and nonnegative off-diagonal
// entries. Build one with normalize_affinities().
class AffinityMatrix {
 public:
  int size() const { return payoffs_.size(); }
  const PayoffMatrix& payoffs() const { return payoffs_; }
  const Eigen::MatrixXd& entries() const { return payoffs_.entries(); }
  // Constant that normalization added to every off-diagonal entry.
  double shift() const { return shift_; }

  // Rows and columns listed in `indices`, in that order.
  AffinityMatrix submatrix(const std::vector<int>& indices) const;

 private:
  friend AffinityMatrix normalize_affinities(const Eigen::MatrixXd& raw);
  AffinityMatrix(PayoffMatrix payoffs, double shift)
      : payoffs_(std::move(payoffs)), shift_(shift) {}

  PayoffMatrix payoffs_;
  double shift_ = 0.0;
};

// Zeroes the diagonal and, when the smallest off-diagonal entry m is
// negative, adds -m to every off-diagonal entry. Asymmetry is preserved.
AffinityMatrix normalize_affinities(const Eigen::MatrixXd& raw);

struct Cluster {
  Support members;
  SimplexPoint weights;  // characteristic vector over `members`
  double cohesiveness = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct ClusteringConfig {
  DynamicsConfig dynamics;
  double support_eps = kDefaultSupportEps;
  int min_size = 1;
  double min_cohesiveness = 0.0;
  // Overlap mode restarts; 0 means one per object.
  int restarts = 0;
  // Keep each extraction's trajectory in ClusteringResult::trajectories.
  bool keep_trajectories = false;

  void validate() const;
};

struct ClusteringResult {
  std::vector<Cluster> clusters;
  std::vector<int> outliers;
  double shift_applied = 0.0;
  // False when some extraction ran out of iterations.
  bool converged = true;
  ClusteringConfig config;
  // One per extraction, in original coordinates, when requested.
  std::vector<Trajectory> trajectories;
};

// Runs the replicator dynamics on W from x0 and reads the cluster off the
// converged state. Stationary points that are not stable (saddles reached
// from symmetric starts) are escaped along an improving direction and the
// dynamics resumed, so the result is a stable state whenever one is
// reachable. `trace`, when given, receives the concatenated trajectory.
Cluster extract_dominant_set(const AffinityMatrix& W, const SimplexPoint& x0,
                             const DynamicsConfig& cfg,
                             double support_eps = kDefaultSupportEps,
                             Trajectory* trace = nullptr);

// Extracts from the barycenter of the remaining objects, removes the
// members and repeats. Extraction stops at the first cluster that fails
// min_size or min_cohesiveness or does not converge; whatever is left is
// reported as outliers. Member indices refer to the original matrix.
ClusteringResult peel_partition(const AffinityMatrix& W,
                                const ClusteringConfig& cfg);

// Extracts from vertex-biased starts 0.9 e_i + 0.1 b on the full matrix,
// keeps distinct member sets passing the filters, and sorts them by
// descending cohesiveness, then member set.
ClusteringResult enumerate_overlapping(const AffinityMatrix& W,
                                       const ClusteringConfig& cfg);

// Starting point of restart r in enumerate_overlapping for n objects.
SimplexPoint biased_start(int n, int r);

namespace detail {

// Given a converged state x with pure-strategy payoffs, their mean, and a
// curvature form whose symmetric part is the Hessian of the mean payoff up
// to a positive factor, returns a nearby state from which the dynamics
// improves on x, or nullopt when x is stable to within tol.
std::optional<Eigen::VectorXd> escape_unstable_state(
    const Eigen::VectorXd& x, const Eigen::VectorXd& payoffs, double mean,
    const Eigen::MatrixXd& curvature, const Support& support, double tol);

// Builds a cluster from a converged state; cohesiveness is filled in by the
// caller.
Cluster make_cluster(const SimplexPoint& x, double support_eps, int iterations,
                     bool converged);

// Embeds a trajectory over `indices` into an n-object trajectory.
Trajectory embed_trajectory(const Trajectory& t, const std::vector<int>& indices,
                            int n);

void append_trajectory(Trajectory& into, const Trajectory& t);

}  // namespace detail

}  // namespace domset

#endif  // DOMSET_CLUSTERING_H_
