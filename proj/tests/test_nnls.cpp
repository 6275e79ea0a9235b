// Copyright 2026 The irwal Authors.
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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "irwal/error.hpp"
#include "irwal/nnls.hpp"
#include "test_support.hpp"

using namespace irwal;

namespace {

// Best feasible least-squares fit over every subset of free columns.
double subset_oracle(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Index m = A.cols();
  double best = b.squaredNorm();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<Index> cols;
    for (Index j = 0; j < m; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    Eigen::MatrixXd As(A.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) As.col(static_cast<Index>(k)) = A.col(cols[k]);
    const Eigen::VectorXd x = As.colPivHouseholderQr().solve(b);
    if ((x.array() < 0.0).any()) continue;
    best = std::min(best, (b - As * x).squaredNorm());
  }
  return best;
}

double dual_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const NnlsSolution& s) {
  const Eigen::VectorXd g = A.transpose() * (b - A * s.alpha);
  double worst = 0.0;
  for (Index j = 0; j < g.size(); ++j) {
    worst = std::max(worst, s.alpha(j) > 0.0 ? std::abs(g(j)) : std::max(0.0, g(j)));
  }
  return worst;
}

}  // namespace

TEST_CASE("identity projection") {
  const auto s = solve_nnls(Eigen::Matrix3d::Identity(), Eigen::Vector3d(1, -2, 3));
  CHECK(s.alpha == Eigen::Vector3d(1, 0, 3));
  CHECK(s.active_set == std::vector<Index>{0, 2});
  CHECK(s.residual_norm == doctest::Approx(2.0));
}

TEST_CASE("nonnegative least squares solution is returned as is") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXd A = testing::gaussian_matrix(rng, 30, 5);
    const Eigen::VectorXd truth = Eigen::VectorXd::LinSpaced(5, 0.5, 2.5);
    const Eigen::VectorXd b = A * truth + 0.01 * testing::gaussian_vector(rng, 30);
    const Eigen::VectorXd ls = (A.transpose() * A).ldlt().solve(A.transpose() * b);
    REQUIRE((ls.array() > 0).all());
    const auto s = solve_nnls(A, b);
    CHECK((s.alpha - ls).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("random 20x6 problems match subset enumeration") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::MatrixXd A = testing::gaussian_matrix(rng, 20, 6);
    const Eigen::VectorXd b = testing::gaussian_vector(rng, 20);
    const auto s = solve_nnls(A, b);
    CHECK((s.alpha.array() >= 0.0).all());
    CHECK(std::abs(s.alpha.size() - 6) == 0);
    CHECK(std::abs(s.residual_norm * s.residual_norm - subset_oracle(A, b)) < 1e-8);
    CHECK(std::abs(s.residual_norm - (b - A * s.alpha).norm()) <= 1e-8 * (1.0 + s.residual_norm));
    CHECK(dual_violation(A, b, s) <= 1e-8);
  }
}

TEST_CASE("exact recovery inside the cone") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXd A = testing::gaussian_matrix(rng, 25, 6).cwiseAbs();
    Eigen::VectorXd truth(6);
    truth << 1.0, 0.0, 2.0, 0.0, 0.5, 3.0;
    const auto s = solve_nnls(A, A * truth);
    CHECK(s.residual_norm < 1e-10);
    CHECK((s.alpha - truth).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("row permutation leaves the solution unchanged") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::MatrixXd A = testing::gaussian_matrix(rng, 40, 8);
    const Eigen::VectorXd b = testing::gaussian_vector(rng, 40);
    std::vector<int> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd Ap(40, 8);
    Eigen::VectorXd bp(40);
    for (int i = 0; i < 40; ++i) {
      Ap.row(i) = A.row(perm[static_cast<std::size_t>(i)]);
      bp(i) = b(perm[static_cast<std::size_t>(i)]);
    }
    const auto s1 = solve_nnls(A, b);
    const auto s2 = solve_nnls(Ap, bp);
    CHECK((s1.alpha - s2.alpha).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("rank-deficient and wide problems stay feasible") {
  std::mt19937_64 rng(5);
  Eigen::MatrixXd A = testing::gaussian_matrix(rng, 10, 15);
  A.col(3) = A.col(1);
  const Eigen::VectorXd b = testing::gaussian_vector(rng, 10);
  const auto s = solve_nnls(A, b);
  CHECK((s.alpha.array() >= 0.0).all());
  CHECK(dual_violation(A, b, s) < 1e-8);
  CHECK(s.n_pivots <= 3 * 15);
}

TEST_CASE("nnls input errors") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Ones(3, 2);
  A(1, 1) = std::nan("");
  try {
    solve_nnls(A, Eigen::Vector3d::Ones());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_THROWS_AS(solve_nnls(Eigen::MatrixXd::Ones(3, 2), Eigen::Vector2d::Ones()), Error);
  CHECK_THROWS_AS(solve_nnls(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0)), Error);
}

TEST_CASE("default tolerance") {
  Eigen::MatrixXd A(2, 3);
  A << 1, -2, 3, 4, 5, -6;
  CHECK(default_nnls_tolerance(A) ==
        doctest::Approx(10 * std::numeric_limits<double>::epsilon() * 15.0 * 3));
}
