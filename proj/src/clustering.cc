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

#include "domset/clustering.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "domset/equilibria.h"

namespace domset {

namespace {

// Largest move away from an unstable state.
constexpr double kEscapeStep = 1e-2;

constexpr double kEscapeTol = kDefaultClassificationTol;

// Bias toward the chosen vertex in the first round of restarts.
constexpr double kVertexBias = 0.9;

}  // namespace

AffinityMatrix AffinityMatrix::submatrix(const std::vector<int>& indices) const {
  const Eigen::MatrixXd sub = entries()(indices, indices);
  return AffinityMatrix(PayoffMatrix(sub), shift_);
}

AffinityMatrix normalize_affinities(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1 || raw.rows() != raw.cols()) {
    throw Error("affinity matrix must be square with n >= 1");
  }
  if (!raw.allFinite()) throw Error("affinity matrix has non-finite entries");
  const Eigen::Index n = raw.rows();
  Eigen::MatrixXd w = raw;
  w.diagonal().setZero();

  double min_off = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) min_off = std::min(min_off, w(i, j));
    }
  }
  const double shift = min_off < 0.0 ? -min_off : 0.0;
  if (shift > 0.0) {
    w.array() += shift;
    w.diagonal().setZero();
  }
  return AffinityMatrix(PayoffMatrix(std::move(w)), shift);
}

void ClusteringConfig::validate() const {
  dynamics.validate();
  if (!(support_eps > 0.0 && support_eps < 1.0)) {
    throw Error("support_eps must lie in (0, 1)");
  }
  if (min_size < 1) throw Error("min_size must be at least 1");
  if (!(min_cohesiveness >= 0.0)) throw Error("min_cohesiveness must be >= 0");
  if (restarts < 0) throw Error("restarts must be nonnegative");
}

namespace detail {

std::optional<Eigen::VectorXd> escape_unstable_state(
    const Eigen::VectorXd& x, const Eigen::VectorXd& payoffs, double mean,
    const Eigen::MatrixXd& curvature, const Support& support, double tol) {
  Eigen::Index best = 0;
  if (payoffs.maxCoeff(&best) > mean + tol) {
    Eigen::VectorXd next = (1.0 - kEscapeStep) * x;
    next[best] += kEscapeStep;
    return next;
  }

  const std::vector<int>& s = support.indices();
  const int m = support.size();
  if (m < 2) return std::nullopt;
  Eigen::MatrixXd restricted(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      restricted(a, b) = 0.5 * (curvature(s[a], s[b]) + curvature(s[b], s[a]));
    }
  }
  const Eigen::MatrixXd Z = sum_zero_basis(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      Z.transpose() * restricted * Z);
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  if (!(solver.eigenvalues()[top] > tol)) return std::nullopt;

  Eigen::VectorXd dir = Z * solver.eigenvectors().col(top);
  Eigen::Index lead = 0;
  dir.cwiseAbs().maxCoeff(&lead);
  if (dir[lead] < 0.0) dir = -dir;

  double smallest = 1.0;
  for (int i : s) smallest = std::min(smallest, x[i]);
  const double step =
      std::min(kEscapeStep, 0.5 * smallest / dir.cwiseAbs().maxCoeff());
  Eigen::VectorXd next = x;
  for (int a = 0; a < m; ++a) next[s[a]] += step * dir[a];
  return next;
}

Cluster make_cluster(const SimplexPoint& x, double support_eps, int iterations,
                     bool converged) {
  Support members = support_of(x, support_eps);
  Eigen::VectorXd w(members.size());
  for (int a = 0; a < members.size(); ++a) w[a] = x[members.indices()[a]];
  w /= w.sum();
  return Cluster{std::move(members), SimplexPoint(std::move(w)), 0.0,
                 iterations, converged};
}

Trajectory embed_trajectory(const Trajectory& t, const std::vector<int>& indices,
                            int n) {
  Trajectory out;
  out.times = t.times;
  out.converged = t.converged;
  out.iterations_used = t.iterations_used;
  out.shift_applied = t.shift_applied;
  out.states.reserve(t.states.size());
  for (const SimplexPoint& s : t.states) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < s.size(); ++a) full[indices[a]] = s[a];
    out.states.emplace_back(std::move(full));
  }
  return out;
}

void append_trajectory(Trajectory& into, const Trajectory& t) {
  const double offset =
      into.times.empty()
          ? 0.0
          : into.times.back() + (t.times.size() > 1 ? t.times[1] - t.times[0]
                                                    : 1.0);
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    into.times.push_back(offset + t.times[i]);
    into.states.push_back(t.states[i]);
  }
  into.converged = t.converged;
  into.iterations_used += t.iterations_used;
  into.shift_applied = t.shift_applied;
}

}  // namespace detail

Cluster extract_dominant_set(const AffinityMatrix& W, const SimplexPoint& x0,
                             const DynamicsConfig& cfg, double support_eps,
                             Trajectory* trace) {
  cfg.validate();
  if (W.size() != x0.size()) throw Error("dimension mismatch");
  const PayoffMatrix& game = W.payoffs();
  DynamicsConfig run_cfg = cfg;
  if (trace == nullptr) run_cfg.record_every = 0;

  SimplexPoint x = x0;
  int iterations = 0;
  bool converged = false;
  // Each escape strictly improves x'Wx for symmetric W, so n escapes is a
  // generous cap; asymmetric games may cycle and stop here.
  for (int escapes = 0;; ++escapes) {
    Trajectory t = run(game, x, run_cfg);
    iterations += t.iterations_used;
    converged = t.converged;
    x = t.final_state();
    if (trace != nullptr) detail::append_trajectory(*trace, t);
    if (!converged || escapes >= W.size()) break;

    const Eigen::VectorXd payoffs = expected_payoffs(game, x);
    auto next = detail::escape_unstable_state(
        x.weights(), payoffs, x.weights().dot(payoffs), W.entries(),
        support_of(x, support_eps), kEscapeTol);
    if (!next) break;
    x = SimplexPoint(std::move(*next));
  }

  Cluster cluster = detail::make_cluster(x, support_eps, iterations, converged);
  const Eigen::MatrixXd block =
      W.entries()(cluster.members.indices(), cluster.members.indices());
  cluster.cohesiveness =
      cluster.weights.weights().dot(block * cluster.weights.weights());
  return cluster;
}

ClusteringResult peel_partition(const AffinityMatrix& W,
                                const ClusteringConfig& cfg) {
  cfg.validate();
  const int n = W.size();
  ClusteringResult result;
  result.shift_applied = W.shift();
  result.config = cfg;

  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;

  while (!remaining.empty()) {
    const int m = static_cast<int>(remaining.size());
    Trajectory trace;
    Cluster c = extract_dominant_set(
        W.submatrix(remaining), SimplexPoint::barycenter(m), cfg.dynamics,
        cfg.support_eps, cfg.keep_trajectories ? &trace : nullptr);
    if (cfg.keep_trajectories) {
      result.trajectories.push_back(
          detail::embed_trajectory(trace, remaining, n));
    }
    if (!c.converged) result.converged = false;
    if (!c.converged || c.members.size() < cfg.min_size ||
        c.cohesiveness < cfg.min_cohesiveness) {
      break;
    }

    std::vector<int> original;
    for (int local : c.members) original.push_back(remaining[local]);
    std::vector<int> rest;
    for (int a = 0; a < m; ++a) {
      if (!c.members.contains(a)) rest.push_back(remaining[a]);
    }
    c.members = Support(std::move(original));
    result.clusters.push_back(std::move(c));
    remaining = std::move(rest);
  }
  result.outliers = std::move(remaining);
  return result;
}

SimplexPoint biased_start(int n, int r) {
  const int vertex = r % n;
  const double bias = kVertexBias * std::pow(0.5, r / n);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, (1.0 - bias) / n);
  w[vertex] += bias;
  return SimplexPoint(std::move(w));
}

ClusteringResult enumerate_overlapping(const AffinityMatrix& W,
                                       const ClusteringConfig& cfg) {
  cfg.validate();
  const int n = W.size();
  const int restarts = cfg.restarts > 0 ? cfg.restarts : n;
  ClusteringResult result;
  result.shift_applied = W.shift();
  result.config = cfg;

  std::set<Support> seen;
  for (int r = 0; r < restarts; ++r) {
    Trajectory trace;
    Cluster c = extract_dominant_set(W, biased_start(n, r), cfg.dynamics,
                                     cfg.support_eps,
                                     cfg.keep_trajectories ? &trace : nullptr);
    if (cfg.keep_trajectories) result.trajectories.push_back(std::move(trace));
    if (!c.converged) result.converged = false;
    if (c.members.size() < cfg.min_size ||
        c.cohesiveness < cfg.min_cohesiveness) {
      continue;
    }
    if (seen.insert(c.members).second) result.clusters.push_back(std::move(c));
  }
  std::stable_sort(result.clusters.begin(), result.clusters.end(),
                   [](const Cluster& a, const Cluster& b) {
                     if (a.cohesiveness != b.cohesiveness) {
                       return a.cohesiveness > b.cohesiveness;
                     }
                     return a.members < b.members;
                   });

  std::vector<bool> covered(n, false);
  for (const Cluster& c : result.clusters) {
    for (int i : c.members) covered[i] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (!covered[i]) result.outliers.push_back(i);
  }
  return result;
}

}  // namespace domset
