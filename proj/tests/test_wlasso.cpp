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
#include "irwal/simulate.hpp"
#include "irwal/wlasso.hpp"
#include "test_support.hpp"

using namespace irwal;
using testing::random_design;

namespace {

const SolverOptions kTight{1e-10, 100000, false};

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

Design simulation_design(long n, std::uint64_t seed) {
  const int L = static_cast<int>(std::floor(5.0 * std::sqrt(static_cast<double>(n))));
  DgpSpec spec = DgpSpec::arch(n + L, seed);
  const SimulatedPath path = simulate_path(spec);
  return build_ar_design(SeriesPanel(path.y.transpose(), {"y"}), 0, LagIndexSets::contiguous(1, L), false);
}

}  // namespace

TEST_CASE("penalty weights") {
  std::mt19937_64 rng(1);
  Design d = random_design(rng, 30, 4);
  d.columns[0] = {-1, 0};
  d.X.col(0).setOnes();
  const PenaltySpec plain = PenaltySpec::make(d, 0.5);
  CHECK(plain.weights == Eigen::Vector4d(0, 1, 1, 1));
  CHECK(!plain.is_penalized(0));

  const PenaltySpec adaptive = PenaltySpec::make(d, 0.5, 2.0, Eigen::Vector4d(3.0, 0.5, 0.0, -2.0));
  CHECK(adaptive.weights(0) == 0.0);
  CHECK(adaptive.weights(1) == doctest::Approx(4.0));
  CHECK(std::isinf(adaptive.weights(2)));
  CHECK(adaptive.is_frozen(2));
  CHECK(adaptive.weights(3) == doctest::Approx(0.25));
  CHECK_THROWS_AS(PenaltySpec::make(d, 0.5, 1.0), Error);
  CHECK_THROWS_AS(PenaltySpec::make(d, -1.0), Error);
}

TEST_CASE("lambda above the critical value zeroes every penalized coefficient") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const Design d = random_design(rng, 40, 6);
    const Eigen::VectorXd w = testing::positive_weights(rng, 40);
    const Eigen::VectorXd w2 = w.array().square();
    const Eigen::VectorXd grad = d.X.transpose() * (w2.array() * d.y.array()).matrix();
    const double bound = 2.0 * grad.cwiseAbs().maxCoeff();
    CHECK(critical_lambda(d, w, PenaltySpec::make(d, 0.0)) == doctest::Approx(bound).epsilon(1e-12));
    const auto fit = solve_weighted_lasso(d, w, PenaltySpec::make(d, bound * (1 + 1e-12)));
    CHECK(fit.beta.isZero(0.0));
    CHECK(fit.active_set.empty());
    CHECK(check_kkt(d, w, PenaltySpec::make(d, bound * 1.01), Eigen::VectorXd::Zero(6)) == 0.0);
    const auto below = solve_weighted_lasso(d, w, PenaltySpec::make(d, bound * 0.99));
    CHECK(below.active_set.size() >= 1);
  }
}

TEST_CASE("lambda zero gives least squares") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const Design d = random_design(rng, 60, 7);
    const Eigen::VectorXd w = testing::positive_weights(rng, 60);
    const Eigen::VectorXd w2 = w.array().square();
    const Eigen::MatrixXd G = d.X.transpose() * w2.asDiagonal() * d.X;
    const Eigen::VectorXd ols = G.ldlt().solve(d.X.transpose() * (w2.array() * d.y.array()).matrix());
    const auto fit = solve_weighted_lasso(d, w, PenaltySpec::make(d, 0.0), nullptr, kTight);
    CHECK(fit.converged);
    CHECK(max_abs_diff(fit.beta, ols) < 1e-6);
  }
}

TEST_CASE("five-column designs match the sign-pattern oracle") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    const Design d = random_design(rng, 25, 5);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(25);
    const PenaltySpec pen = PenaltySpec::make(d, 0.3);
    const auto oracle = testing::sign_pattern_oracle(d, w, pen.weights, 0.3);
    const auto fit = solve_weighted_lasso(d, w, pen, nullptr, kTight);
    CHECK(std::abs(fit.objective - oracle.objective) < 1e-8);
    CHECK(max_abs_diff(fit.beta, oracle.beta) < 1e-5);
  }
}

TEST_CASE("weighted and adaptive problems with an intercept match the oracle") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    Eigen::MatrixXd X = testing::gaussian_matrix(rng, 40, 6);
    X.col(0).setOnes();
    const Eigen::VectorXd y = 1.5 + X.col(1).array() - 0.5 * X.col(3).array() +
                              0.7 * testing::gaussian_vector(rng, 40).array();
    const Design d = testing::raw_design(X, y, true);
    const Eigen::VectorXd w = testing::positive_weights(rng, 40);
    const Eigen::VectorXd init = testing::gaussian_vector(rng, 6);
    const double lambda = std::array{0.0, 0.5, 5.0, 40.0}[static_cast<std::size_t>(rep % 4)];
    const PenaltySpec pen = PenaltySpec::make(d, lambda, 1.0, init);
    const auto oracle = testing::sign_pattern_oracle(d, w, pen.weights, lambda);
    const auto fit = solve_weighted_lasso(d, w, pen, nullptr, kTight);
    CHECK(std::abs(fit.objective - oracle.objective) < 1e-8 * (1.0 + oracle.objective));
    CHECK(fit.beta(0) != 0.0);
  }
}

TEST_CASE("frozen columns stay at zero") {
  std::mt19937_64 rng(6);
  const Design d = random_design(rng, 50, 4, 0.1);
  Eigen::VectorXd init = Eigen::Vector4d(1.0, 0.0, 1.0, 0.0);
  const PenaltySpec pen = PenaltySpec::make(d, 0.01, 1.0, init);
  const auto fit = solve_weighted_lasso(d, Eigen::VectorXd::Ones(50), pen);
  CHECK(fit.beta(1) == 0.0);
  CHECK(fit.beta(3) == 0.0);
  CHECK(fit.beta(0) != 0.0);
  CHECK(std::isfinite(fit.objective));
  CHECK(check_kkt(d, Eigen::VectorXd::Ones(50), pen, fit.beta) < 1e-5);
}

TEST_CASE("fit fields are self-consistent") {
  std::mt19937_64 rng(7);
  const Design d = random_design(rng, 80, 10);
  const Eigen::VectorXd w = testing::positive_weights(rng, 80);
  const PenaltySpec pen = PenaltySpec::make(d, 5.0);
  const auto fit = solve_weighted_lasso(d, w, pen);
  const double recomputed = weighted_lasso_objective(d, w, pen, fit.beta);
  CHECK(std::abs(fit.objective - recomputed) <= 1e-8 * std::abs(recomputed));
  std::vector<Index> nz;
  for (Index j = 0; j < fit.beta.size(); ++j)
    if (fit.beta(j) != 0.0) nz.push_back(j);
  CHECK(fit.active_set == nz);
  CHECK(fit.lambda == 5.0);
  CHECK(fit.converged);
  CHECK(fit.kkt_max_violation == check_kkt(d, w, pen, fit.beta));
  // The tolerance bounds coefficient changes; gradients scale with s_j.
  const double s_max = (w.array().square().matrix().asDiagonal() * d.X.cwiseAbs2()).colwise().sum().maxCoeff();
  CHECK(fit.kkt_max_violation < 100 * SolverOptions{}.tol * s_max);
}

TEST_CASE("tight solves satisfy KKT and perturbations violate it") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const Design d = random_design(rng, 60, 8);
    const Eigen::VectorXd w = testing::positive_weights(rng, 60);
    const PenaltySpec pen = PenaltySpec::make(d, 3.0);
    const auto fit = solve_weighted_lasso(d, w, pen, nullptr, kTight);
    CHECK(fit.kkt_max_violation < 1e-6);
    if (fit.active_set.empty()) continue;
    const Index j = fit.active_set.front();
    Eigen::VectorXd bumped = fit.beta;
    bumped(j) += 0.1;
    const double s_j = (w.array().square() * d.X.col(j).array().square()).sum();
    CHECK(check_kkt(d, w, pen, bumped) >= 0.1 * s_j - 1e-6);
  }
}

TEST_CASE("objective never increases across sweeps") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const Design d = random_design(rng, 100, 30);
    const Eigen::VectorXd w = testing::positive_weights(rng, 100);
    SolverOptions opts;
    opts.record_objective = true;
    const auto fit = solve_weighted_lasso(d, w, PenaltySpec::make(d, 2.0), nullptr, opts);
    REQUIRE(fit.objective_trace.size() >= 2);
    for (std::size_t i = 1; i < fit.objective_trace.size(); ++i) {
      CHECK(fit.objective_trace[i] <= fit.objective_trace[i - 1] * (1 + 1e-12));
    }
  }
}

TEST_CASE("scaling the weights by c equals dividing lambda by c squared") {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 10; ++rep) {
    const Design d = random_design(rng, 50, 8);
    const Eigen::VectorXd w = testing::positive_weights(rng, 50);
    for (double c : {0.5, 2.0, 10.0}) {
      const auto a = solve_weighted_lasso(d, c * w, PenaltySpec::make(d, 4.0), nullptr, kTight);
      const auto b = solve_weighted_lasso(d, w, PenaltySpec::make(d, 4.0 / (c * c)), nullptr, kTight);
      CHECK(max_abs_diff(a.beta, b.beta) < 1e-6);
    }
  }
}

TEST_CASE("column permutation commutes with the solve") {
  std::mt19937_64 rng(11);
  const Design d = random_design(rng, 70, 9);
  const Eigen::VectorXd w = testing::positive_weights(rng, 70);
  std::vector<Index> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Design pd = select_columns(d, perm);
  const auto a = solve_weighted_lasso(d, w, PenaltySpec::make(d, 1.5), nullptr, kTight);
  const auto b = solve_weighted_lasso(pd, w, PenaltySpec::make(pd, 1.5), nullptr, kTight);
  for (Index k = 0; k < 9; ++k) CHECK(std::abs(b.beta(k) - a.beta(perm[static_cast<std::size_t>(k)])) < 1e-7);
}

TEST_CASE("warm start does not change the solution") {
  std::mt19937_64 rng(12);
  const Design d = random_design(rng, 70, 12);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(70);
  const Eigen::VectorXd warm = testing::gaussian_vector(rng, 12);
  const auto a = solve_weighted_lasso(d, w, PenaltySpec::make(d, 3.0), nullptr, kTight);
  const auto b = solve_weighted_lasso(d, w, PenaltySpec::make(d, 3.0), &warm, kTight);
  CHECK(max_abs_diff(a.beta, b.beta) < 1e-7);
}

TEST_CASE("solver input errors and sweep exhaustion") {
  std::mt19937_64 rng(13);
  const Design d = random_design(rng, 20, 3);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(20);
  w(4) = 0.0;
  CHECK_THROWS_AS(solve_weighted_lasso(d, w, PenaltySpec::make(d, 1.0)), Error);
  w(4) = -1.0;
  try {
    solve_weighted_lasso(d, w, PenaltySpec::make(d, 1.0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidWeights);
  }
  CHECK_THROWS_AS(solve_weighted_lasso(d, Eigen::VectorXd::Ones(19), PenaltySpec::make(d, 1.0)), Error);

  const Design big = random_design(rng, 100, 40);
  SolverOptions one;
  one.max_sweeps = 1;
  one.tol = 1e-14;
  const auto fit = solve_weighted_lasso(big, Eigen::VectorXd::Ones(100), PenaltySpec::make(big, 0.01), nullptr, one);
  CHECK(!fit.converged);
  CHECK(fit.n_iters == 1);
}

TEST_CASE("default grid") {
  const auto g = exponential_lambda_grid();
  REQUIRE(g.size() == 100);
  CHECK(g.front() == doctest::Approx(std::pow(2.0, -4)));
  CHECK(g.back() == doctest::Approx(std::pow(2.0, -18)));
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] < g[i - 1]);
    CHECK(std::log2(g[i - 1]) - std::log2(g[i]) == doctest::Approx(14.0 / 99.0));
  }
}

TEST_CASE("path semantics") {
  std::mt19937_64 rng(14);
  const Design d = random_design(rng, 60, 10);
  const Eigen::VectorXd w = testing::positive_weights(rng, 60);
  const PenaltySpec base = PenaltySpec::make(d, 0.0);
  const auto single = lasso_path(d, w, base, {2.0});
  const auto direct = solve_weighted_lasso(d, w, base.with_lambda(2.0));
  REQUIRE(single.size() == 1);
  CHECK(single[0].beta == direct.beta);

  const std::vector<double> lambdas{50.0, 10.0, 2.0, 0.5};
  const auto path = lasso_path(d, w, base, lambdas, kTight);
  REQUIRE(path.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(path[i].lambda == lambdas[i]);
    const auto cold = solve_weighted_lasso(d, w, base.with_lambda(lambdas[i]), nullptr, kTight);
    CHECK(max_abs_diff(path[i].beta, cold.beta) < 1e-7);
  }
  CHECK_THROWS_AS(lasso_path(d, w, base, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(lasso_path(d, w, base, {1.0, 1.0}), Error);
}

TEST_CASE("active-set size is nearly monotone along the default grid") {
  const Design d = simulation_design(600, 2024);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(d.rows());
  const auto grid = exponential_lambda_grid();
  std::vector<double> scaled;
  for (double g : grid) scaled.push_back(2.0 * g * static_cast<double>(d.rows()));
  const auto path = lasso_path(d, w, PenaltySpec::make(d, 0.0), scaled);
  int ok = 0;
  for (std::size_t i = 1; i < path.size(); ++i) ok += path[i].active_set.size() >= path[i - 1].active_set.size();
  CHECK(ok >= 95);
}
