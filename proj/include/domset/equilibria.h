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

// Classification of symmetric-game equilibria.
//
// A point is tested in a fixed order: stationary under the replicator field,
// symmetric Nash (no pure strategy beats the population mean, every used
// strategy earns it), and evolutionarily stable. Stability uses the
// extended-support criterion: with E the set of pure best replies, x is an
// ESS when the symmetric part of A is negative definite on the sum-zero
// directions supported on E.

#ifndef DOMSET_EQUILIBRIA_H_
#define DOMSET_EQUILIBRIA_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "domset/game_core.h"

namespace domset {

inline constexpr double kDefaultClassificationTol = 1e-8;
inline constexpr int kDefaultEnumerationCap = 12;

struct EquilibriumReport {
  SimplexPoint point;
  bool stationary = false;
  bool nash = false;
  bool ess = false;
  double tol = kDefaultClassificationTol;
  Support support;
  // Names the first test that failed, or "ess" when all passed.
  std::string certificate;
};

bool is_nash(const PayoffMatrix& A, const SimplexPoint& x,
             double tol = kDefaultClassificationTol);

bool is_ess(const PayoffMatrix& A, const SimplexPoint& x,
            double tol = kDefaultClassificationTol);

EquilibriumReport classify(const PayoffMatrix& A, const SimplexPoint& x,
                           double tol = kDefaultClassificationTol);

struct CandidateSet {
  std::vector<EquilibriumReport> reports;
  // Supports whose indifference system was rank deficient.
  std::vector<Support> degenerate_supports;
};

// Support enumeration: for each nonempty support S (lexicographic order)
// solve (Ax)_i = v for i in S with sum x = 1, keep nonnegative solutions,
// classify them, and drop points within 1e-6 (max-norm) of an earlier one.
CandidateSet enumerate_candidates(const PayoffMatrix& A,
                                  int max_n = kDefaultEnumerationCap,
                                  double tol = kDefaultClassificationTol);

// Orthonormal basis (m x (m-1)) of the sum-zero subspace of R^m.
Eigen::MatrixXd sum_zero_basis(int m);

// Largest eigenvalue of Z'SZ, where S is the symmetric part of `form`
// restricted to `indices` and Z = sum_zero_basis(|indices|). Returns
// -infinity for fewer than two indices (the tangent space is trivial).
double max_tangent_eigenvalue(const Eigen::MatrixXd& form,
                              const std::vector<int>& indices);

}  // namespace domset

#endif  // DOMSET_EQUILIBRIA_H_
