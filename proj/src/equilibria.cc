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

#include "domset/equilibria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "domset/dynamics.h"

namespace domset {

namespace {

constexpr double kDedupDistance = 1e-6;

}  // namespace

Eigen::MatrixXd sum_zero_basis(int m) {
  // Helmert contrasts: column k-1 is (1, ..., 1, -k, 0, ...)/sqrt(k(k+1)).
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(m, std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) Z(i, k - 1) = scale;
    Z(k, k - 1) = -k * scale;
  }
  return Z;
}

double max_tangent_eigenvalue(const Eigen::MatrixXd& form,
                              const std::vector<int>& indices) {
  const int m = static_cast<int>(indices.size());
  if (m < 2) return -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd restricted(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      restricted(a, b) = 0.5 * (form(indices[a], indices[b]) +
                                form(indices[b], indices[a]));
    }
  }
  const Eigen::MatrixXd Z = sum_zero_basis(m);
  const Eigen::MatrixXd projected = Z.transpose() * restricted * Z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      projected, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

bool is_nash(const PayoffMatrix& A, const SimplexPoint& x, double tol) {
  const Eigen::VectorXd payoffs = expected_payoffs(A, x);
  const double mean = x.weights().dot(payoffs);
  const Support support = support_of(x);
  for (int i = 0; i < x.size(); ++i) {
    if (payoffs[i] > mean + tol) return false;
  }
  for (int i : support) {
    if (std::abs(payoffs[i] - mean) > tol) return false;
  }
  return true;
}

bool is_ess(const PayoffMatrix& A, const SimplexPoint& x, double tol) {
  if (!is_nash(A, x, tol)) return false;
  const Eigen::VectorXd payoffs = expected_payoffs(A, x);
  const double mean = x.weights().dot(payoffs);
  std::vector<int> extended;
  for (int j = 0; j < x.size(); ++j) {
    if (payoffs[j] >= mean - tol) extended.push_back(j);
  }
  return max_tangent_eigenvalue(A.entries(), extended) < -tol;
}

EquilibriumReport classify(const PayoffMatrix& A, const SimplexPoint& x,
                           double tol) {
  EquilibriumReport report{x, false, false, false, tol, support_of(x), ""};
  report.stationary = is_stationary(A, x, tol);
  if (!report.stationary) {
    report.certificate = "not stationary";
    return report;
  }
  report.nash = is_nash(A, x, tol);
  if (!report.nash) {
    report.certificate = "stationary but not nash";
    return report;
  }
  report.ess = is_ess(A, x, tol);
  report.certificate = report.ess ? "ess" : "nash but not ess";
  return report;
}

CandidateSet enumerate_candidates(const PayoffMatrix& A, int max_n,
                                  double tol) {
  const int n = A.size();
  if (n > max_n) {
    throw Error("support enumeration cap exceeded: n = " + std::to_string(n) +
                " > " + std::to_string(max_n));
  }

  std::vector<std::vector<int>> supports;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    supports.push_back(std::move(s));
  }
  std::sort(supports.begin(), supports.end());

  CandidateSet out;
  for (const auto& s : supports) {
    const int m = static_cast<int>(s.size());
    // Unknowns: x_S followed by the common payoff v.
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) system(a, b) = A(s[a], s[b]);
      system(a, m) = -1.0;
      system(m, a) = 1.0;
    }
    rhs[m] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) {
      out.degenerate_supports.emplace_back(s);
      continue;
    }
    const Eigen::VectorXd sol = lu.solve(rhs);
    bool feasible = sol.allFinite();
    for (int a = 0; a < m && feasible; ++a) feasible = sol[a] >= -tol;
    if (!feasible) continue;

    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < m; ++a) w[s[a]] = std::max(sol[a], 0.0);
    const double sum = w.sum();
    if (!(sum > 0.0)) continue;
    SimplexPoint point(w / sum);

    const bool duplicate = std::any_of(
        out.reports.begin(), out.reports.end(), [&](const auto& r) {
          return (r.point.weights() - point.weights()).cwiseAbs().maxCoeff() <=
                 kDedupDistance;
        });
    if (!duplicate) out.reports.push_back(classify(A, point, tol));
  }
  return out;
}

}  // namespace domset
