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

#ifndef DOMSET_GAME_CORE_H_
#define DOMSET_GAME_CORE_H_

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace domset {

// Base class of every error raised by the library. Input problems (bad
// dimensions, corrupt numbers, unparseable files) all surface as Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Index i is in the support of x iff x_i > kDefaultSupportEps / n.
inline constexpr double kDefaultSupportEps = 1e-4;

// Sum deviation tolerated (and renormalized away) when building a
// SimplexPoint; anything larger is rejected.
inline constexpr double kSimplexSumTolerance = 1e-9;

// Sums within this distance of one are kept as given, so a point rebuilt
// from its own weights is bit-identical.
inline constexpr double kSimplexExactTolerance = 1e-12;

// Negative weights at or above -kNegativeClamp are treated as round-off
// and clamped to zero.
inline constexpr double kNegativeClamp = 1e-12;

// Square n x n matrix of finite payoffs, n >= 1. Neither symmetry nor
// nonnegativity is required.
class PayoffMatrix {
 public:
  explicit PayoffMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  friend bool operator==(const PayoffMatrix& a, const PayoffMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Eigen::MatrixXd entries_;
};

// A population state: nonnegative weights summing to one.
class SimplexPoint {
 public:
  // Clamps tiny negatives and renormalizes small sum drift; throws Error on
  // anything else that is not a probability vector.
  explicit SimplexPoint(Eigen::VectorXd weights);

  static SimplexPoint barycenter(int n);
  static SimplexPoint vertex(int n, int k);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const Eigen::VectorXd& weights() const { return weights_; }

  friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) {
    return a.weights_ == b.weights_;
  }

 private:
  Eigen::VectorXd weights_;
};

// Ordered set of strategy indices carrying non-negligible mass.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  friend bool operator==(const Support&, const Support&) = default;
  friend auto operator<=>(const Support&, const Support&) = default;

 private:
  std::vector<int> indices_;
};

Support support_of(const SimplexPoint& x, double eps = kDefaultSupportEps);

// (Ax)_i: payoff of pure strategy i against population x.
Eigen::VectorXd expected_payoffs(const PayoffMatrix& A, const SimplexPoint& x);

// x'Ax.
double mean_payoff(const PayoffMatrix& A, const SimplexPoint& x);

// A + c * ones(n, n).
PayoffMatrix shift_payoffs(const PayoffMatrix& A, double c);

}  // namespace domset

#endif  // DOMSET_GAME_CORE_H_
