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

#include "domset/dynamics.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace domset {

namespace {

// Field evaluated on an arbitrary vector; RK4 stages leave the simplex by
// round-off so they cannot be SimplexPoints.
Eigen::VectorXd field(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) {
  const Eigen::VectorXd payoffs = A * x;
  const double mean = x.dot(payoffs);
  return x.array() * (payoffs.array() - mean);
}

SimplexPoint finish_step(Eigen::VectorXd next) {
  if (!next.allFinite()) throw Error("step size too large");
  for (Eigen::Index i = 0; i < next.size(); ++i) {
    if (next[i] < -kNegativeClamp) throw Error("step size too large");
  }
  try {
    return SimplexPoint(std::move(next));
  } catch (const Error&) {
    throw Error("step size too large");
  }
}

}  // namespace

void DynamicsConfig::validate() const {
  if (mode == DynamicsMode::kContinuous && !(dt > 0.0 && std::isfinite(dt))) {
    throw Error("dt must be positive in continuous mode");
  }
  if (!(tol_convergence > 0.0)) throw Error("tol_convergence must be positive");
  if (max_iters < 1) throw Error("max_iters must be at least 1");
  if (record_every < 0) throw Error("record_every must be nonnegative");
}

Eigen::VectorXd replicator_rhs(const PayoffMatrix& A, const SimplexPoint& x) {
  const Eigen::VectorXd payoffs = expected_payoffs(A, x);
  const double mean = x.weights().dot(payoffs);
  return x.weights().array() * (payoffs.array() - mean);
}

SimplexPoint discrete_step(const PayoffMatrix& A, const SimplexPoint& x) {
  const Eigen::VectorXd payoffs = expected_payoffs(A, x);
  const double mean = x.weights().dot(payoffs);
  if (!(mean > 0.0)) {
    throw Error("nonpositive mean payoff: shift the payoff matrix");
  }
  Eigen::VectorXd next(x.size());
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && payoffs[i] < 0.0) {
      throw Error("nonpositive mean payoff: shift the payoff matrix");
    }
    next[i] = x[i] * payoffs[i] / mean;
  }
  return SimplexPoint(std::move(next));
}

SimplexPoint integrate_continuous_step(const PayoffMatrix& A,
                                       const SimplexPoint& x, double dt) {
  if (!(dt > 0.0)) throw Error("dt must be positive");
  if (A.size() != x.size()) throw Error("dimension mismatch");
  const Eigen::MatrixXd& M = A.entries();
  const Eigen::VectorXd& x0 = x.weights();
  const Eigen::VectorXd k1 = field(M, x0);
  const Eigen::VectorXd k2 = field(M, x0 + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = field(M, x0 + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = field(M, x0 + dt * k3);
  return finish_step(x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

double discrete_auto_shift(const PayoffMatrix& A, const SimplexPoint& x0) {
  const double min_entry = A.entries().minCoeff();
  if (min_entry < 0.0) return -min_entry + 1.0;
  if (!(mean_payoff(A, x0) > 0.0)) return 1.0;
  return 0.0;
}

Trajectory run(const PayoffMatrix& A, const SimplexPoint& x0,
               const DynamicsConfig& cfg) {
  cfg.validate();
  if (A.size() != x0.size()) throw Error("dimension mismatch");

  const bool discrete = cfg.mode == DynamicsMode::kDiscrete;
  Trajectory traj;
  std::optional<PayoffMatrix> shifted;
  if (discrete) {
    traj.shift_applied = discrete_auto_shift(A, x0);
    if (traj.shift_applied != 0.0) {
      shifted.emplace(shift_payoffs(A, traj.shift_applied));
    }
  }
  const PayoffMatrix& game = shifted ? *shifted : A;
  auto time_of = [&](int it) {
    return discrete ? static_cast<double>(it) : it * cfg.dt;
  };

  SimplexPoint x = x0;
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  int it = 0;
  if (discrete) {
    const bool nonnegative = game.entries().minCoeff() >= 0.0;
    while (it < cfg.max_iters) {
      // With nonnegative payoffs a zero mean means every strategy in the
      // support earns zero, so x is a rest point.
      if (nonnegative && !(mean_payoff(game, x) > 0.0)) {
        traj.converged = true;
        break;
      }
      SimplexPoint next = discrete_step(game, x);
      const double change = (next.weights() - x.weights()).cwiseAbs().maxCoeff();
      x = std::move(next);
      ++it;
      if (cfg.record_every > 0 && it % cfg.record_every == 0) {
        traj.times.push_back(time_of(it));
        traj.states.push_back(x);
      }
      if (change < cfg.tol_convergence) {
        traj.converged = true;
        break;
      }
    }
  } else {
    while (true) {
      if (replicator_rhs(game, x).cwiseAbs().maxCoeff() < cfg.tol_convergence) {
        traj.converged = true;
        break;
      }
      if (it == cfg.max_iters) break;
      x = integrate_continuous_step(game, x, cfg.dt);
      ++it;
      if (cfg.record_every > 0 && it % cfg.record_every == 0) {
        traj.times.push_back(time_of(it));
        traj.states.push_back(x);
      }
    }
  }
  if (traj.times.back() != time_of(it)) {
    traj.times.push_back(time_of(it));
    traj.states.push_back(x);
  }
  traj.iterations_used = it;
  return traj;
}

bool is_stationary(const PayoffMatrix& A, const SimplexPoint& x, double tol) {
  return replicator_rhs(A, x).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace domset
