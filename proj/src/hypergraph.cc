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
#include <cmath>
#include <string>
#include <utility>

#include "domset/equilibria.h"

namespace domset {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

void check_dims(const AffinityTensor& T, const SimplexPoint& x) {
  if (T.size() != x.size()) {
    throw Error("dimension mismatch: tensor over " + std::to_string(T.size()) +
                " objects, state has " + std::to_string(x.size()));
  }
}

}  // namespace

AffinityTensor::AffinityTensor(int n, int k, std::vector<Hyperedge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n_ < 1) throw Error("hypergraph needs n >= 1");
  if (k_ < 2) throw Error("hyperedge arity must be at least 2");
  for (Hyperedge& e : edges_) {
    if (static_cast<int>(e.members.size()) != k_) {
      throw Error("hyperedge has " + std::to_string(e.members.size()) +
                  " members, expected " + std::to_string(k_));
    }
    std::sort(e.members.begin(), e.members.end());
    if (std::adjacent_find(e.members.begin(), e.members.end()) !=
        e.members.end()) {
      throw Error("hyperedge has a repeated index");
    }
    if (e.members.front() < 0 || e.members.back() >= n_) {
      throw Error("hyperedge index out of range");
    }
    if (!std::isfinite(e.weight) || !(e.weight > 0.0)) {
      throw Error("hyperedge weight must be positive and finite");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Hyperedge& a, const Hyperedge& b) {
              return a.members < b.members;
            });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].members == edges_[i - 1].members) {
      throw Error("duplicate hyperedge");
    }
  }
}

AffinityTensor AffinityTensor::restricted(const std::vector<int>& indices) const {
  std::vector<int> position(n_, -1);
  for (std::size_t a = 0; a < indices.size(); ++a) {
    position[indices[a]] = static_cast<int>(a);
  }
  std::vector<Hyperedge> kept;
  for (const Hyperedge& e : edges_) {
    Hyperedge local{{}, e.weight};
    for (int i : e.members) {
      if (position[i] < 0) break;
      local.members.push_back(position[i]);
    }
    if (static_cast<int>(local.members.size()) == k_) {
      kept.push_back(std::move(local));
    }
  }
  return AffinityTensor(static_cast<int>(indices.size()), k_, std::move(kept));
}

Eigen::VectorXd tensor_payoffs(const AffinityTensor& T, const SimplexPoint& x) {
  check_dims(T, x);
  const double orderings = factorial(T.arity() - 1);
  Eigen::VectorXd payoffs = Eigen::VectorXd::Zero(T.size());
  for (const Hyperedge& e : T.edges()) {
    for (int i : e.members) {
      double prod = e.weight;
      for (int j : e.members) {
        if (j != i) prod *= x[j];
      }
      payoffs[i] += prod;
    }
  }
  return orderings * payoffs;
}

double tensor_mean_payoff(const AffinityTensor& T, const SimplexPoint& x) {
  return x.weights().dot(tensor_payoffs(T, x));
}

Eigen::MatrixXd tensor_curvature(const AffinityTensor& T,
                                 const SimplexPoint& x) {
  check_dims(T, x);
  const double orderings = factorial(T.arity() - 2);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(T.size(), T.size());
  for (const Hyperedge& e : T.edges()) {
    for (int i : e.members) {
      for (int l : e.members) {
        if (l == i) continue;
        double prod = e.weight;
        for (int j : e.members) {
          if (j != i && j != l) prod *= x[j];
        }
        c(i, l) += prod;
      }
    }
  }
  return orderings * c;
}

Cluster extract_hyper_cluster(const AffinityTensor& T, const SimplexPoint& x0,
                              const DynamicsConfig& cfg, double support_eps,
                              Trajectory* trace) {
  cfg.validate();
  check_dims(T, x0);

  SimplexPoint x = x0;
  int iterations = 0;
  bool converged = false;
  for (int escapes = 0;; ++escapes) {
    Trajectory t;
    t.times.push_back(0.0);
    t.states.push_back(x);
    int it = 0;
    converged = false;
    while (it < cfg.max_iters) {
      const Eigen::VectorXd payoffs = tensor_payoffs(T, x);
      const double mean = x.weights().dot(payoffs);
      if (!(mean > 0.0)) {
        if (x.weights().maxCoeff() == 1.0) {
          converged = true;
          break;
        }
        throw Error("dynamics stalled: disconnected tensor");
      }
      SimplexPoint next(x.weights().cwiseProduct(payoffs) / mean);
      const double change = (next.weights() - x.weights()).cwiseAbs().maxCoeff();
      x = std::move(next);
      ++it;
      if (trace != nullptr && cfg.record_every > 0 && it % cfg.record_every == 0) {
        t.times.push_back(it);
        t.states.push_back(x);
      }
      if (change < cfg.tol_convergence) {
        converged = true;
        break;
      }
    }
    if (t.times.back() != it) {
      t.times.push_back(it);
      t.states.push_back(x);
    }
    t.iterations_used = it;
    t.converged = converged;
    iterations += it;
    if (trace != nullptr) detail::append_trajectory(*trace, t);
    if (!converged || escapes >= T.size()) break;

    const Eigen::VectorXd payoffs = tensor_payoffs(T, x);
    auto next = detail::escape_unstable_state(
        x.weights(), payoffs, x.weights().dot(payoffs), tensor_curvature(T, x),
        support_of(x, support_eps), kDefaultClassificationTol);
    if (!next) break;
    x = SimplexPoint(std::move(*next));
  }

  Cluster cluster = detail::make_cluster(x, support_eps, iterations, converged);
  cluster.cohesiveness = tensor_mean_payoff(
      T.restricted(cluster.members.indices()), cluster.weights);
  return cluster;
}

ClusteringResult peel_hyper_partition(const AffinityTensor& T,
                                      const ClusteringConfig& cfg) {
  cfg.validate();
  const int n = T.size();
  ClusteringResult result;
  result.config = cfg;

  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;

  while (!remaining.empty()) {
    const AffinityTensor sub = T.restricted(remaining);
    if (sub.edges().empty()) break;
    const int m = static_cast<int>(remaining.size());
    Trajectory trace;
    Cluster c = extract_hyper_cluster(sub, SimplexPoint::barycenter(m),
                                      cfg.dynamics, cfg.support_eps,
                                      cfg.keep_trajectories ? &trace : nullptr);
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

}  // namespace domset
