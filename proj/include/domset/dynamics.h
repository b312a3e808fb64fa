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

#ifndef DOMSET_DYNAMICS_H_
#define DOMSET_DYNAMICS_H_

#include <vector>

#include <Eigen/Dense>

#include "domset/game_core.h"

namespace domset {

enum class DynamicsMode { kDiscrete, kContinuous };

struct DynamicsConfig {
  DynamicsMode mode = DynamicsMode::kDiscrete;
  double dt = 0.01;  // continuous mode only
  double tol_convergence = 1e-10;
  int max_iters = 100000;
  // Record every k-th state; 0 keeps the two endpoints only.
  int record_every = 1;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SimplexPoint> states;
  bool converged = false;
  int iterations_used = 0;
  // Constant added to the payoff matrix before a discrete run.
  double shift_applied = 0.0;

  const SimplexPoint& final_state() const { return states.back(); }
};

// x_i [(Ax)_i - x'Ax], the continuous replicator vector field.
Eigen::VectorXd replicator_rhs(const PayoffMatrix& A, const SimplexPoint& x);

// One multiplicative update x_i <- x_i (Ax)_i / x'Ax. Requires x'Ax > 0 and
// (Ax)_i >= 0 wherever x_i > 0.
SimplexPoint discrete_step(const PayoffMatrix& A, const SimplexPoint& x);

// One classical RK4 step of replicator_rhs.
SimplexPoint integrate_continuous_step(const PayoffMatrix& A,
                                       const SimplexPoint& x, double dt);

// Shift that run() applies in discrete mode before iterating from x0; zero
// when A is nonnegative and x0'Ax0 > 0.
double discrete_auto_shift(const PayoffMatrix& A, const SimplexPoint& x0);

// Iterates from x0 until the per-step change (discrete) or the field
// (continuous) drops below cfg.tol_convergence in max-norm, or
// cfg.max_iters steps have been taken. Running out of steps is not an
// error; check Trajectory::converged.
Trajectory run(const PayoffMatrix& A, const SimplexPoint& x0,
               const DynamicsConfig& cfg);

bool is_stationary(const PayoffMatrix& A, const SimplexPoint& x, double tol);

}  // namespace domset

#endif  // DOMSET_DYNAMICS_H_
