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

#include "domset/game_core.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace domset {

namespace {

void check_dims(const PayoffMatrix& A, const SimplexPoint& x) {
  if (A.size() != x.size()) {
    throw Error("dimension mismatch: payoff matrix is " +
                std::to_string(A.size()) + "x" + std::to_string(A.size()) +
                " but state has " + std::to_string(x.size()) + " entries");
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw Error("payoff matrix must be square with n >= 1, got " +
                std::to_string(entries_.rows()) + "x" +
                std::to_string(entries_.cols()));
  }
  if (!entries_.allFinite()) {
    throw Error("payoff matrix has non-finite entries");
  }
}

SimplexPoint::SimplexPoint(Eigen::VectorXd weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw Error("simplex point needs n >= 1");
  if (!weights_.allFinite()) throw Error("simplex point has non-finite weights");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0.0) {
      if (weights_[i] < -kNegativeClamp) {
        throw Error("simplex point has negative weight " +
                    std::to_string(weights_[i]) + " at index " +
                    std::to_string(i));
      }
      weights_[i] = 0.0;
    }
  }
  const double sum = weights_.sum();
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw Error("simplex point weights sum to " + std::to_string(sum) +
                ", not 1");
  }
  if (std::abs(sum - 1.0) > kSimplexExactTolerance) weights_ /= sum;
}

SimplexPoint SimplexPoint::barycenter(int n) {
  if (n < 1) throw Error("barycenter needs n >= 1");
  return SimplexPoint(Eigen::VectorXd::Constant(n, 1.0 / n));
}

SimplexPoint SimplexPoint::vertex(int n, int k) {
  if (k < 0 || k >= n) throw Error("vertex index out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  w[k] = 1.0;
  return SimplexPoint(std::move(w));
}

Support::Support(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) {
    throw Error("support index must be nonnegative");
  }
}

bool Support::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

Support support_of(const SimplexPoint& x, double eps) {
  const double cutoff = eps / x.size();
  std::vector<int> idx;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > cutoff) idx.push_back(i);
  }
  return Support(std::move(idx));
}

Eigen::VectorXd expected_payoffs(const PayoffMatrix& A, const SimplexPoint& x) {
  check_dims(A, x);
  Eigen::VectorXd payoffs = A.entries() * x.weights();
  if (!payoffs.allFinite()) throw Error("non-finite expected payoff");
  return payoffs;
}

double mean_payoff(const PayoffMatrix& A, const SimplexPoint& x) {
  const double mean = x.weights().dot(expected_payoffs(A, x));
  if (!std::isfinite(mean)) throw Error("non-finite mean payoff");
  return mean;
}

PayoffMatrix shift_payoffs(const PayoffMatrix& A, double c) {
  if (!std::isfinite(c)) throw Error("payoff shift must be finite");
  return PayoffMatrix(A.entries().array() + c);
}

}  // namespace domset
