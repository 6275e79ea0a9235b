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

#include "irwal/nnls.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irwal/error.hpp"

namespace irwal {
namespace {

using Index = Eigen::Index;

// Least squares restricted to the passive columns, via their Gram block.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& gram, const Eigen::VectorXd& atb,
                              const std::vector<Index>& passive) {
  const Index k = static_cast<Index>(passive.size());
  Eigen::MatrixXd g(k, k);
  Eigen::VectorXd c(k);
  for (Index a = 0; a < k; ++a) {
    c(a) = atb(passive[static_cast<std::size_t>(a)]);
    for (Index b = 0; b < k; ++b) {
      g(a, b) = gram(passive[static_cast<std::size_t>(a)], passive[static_cast<std::size_t>(b)]);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() == Eigen::Success) return llt.solve(c);
  return g.completeOrthogonalDecomposition().solve(c);
}

}  // namespace

double default_nnls_tolerance(const Eigen::MatrixXd& A) {
  const double norm_inf = A.cwiseAbs().rowwise().sum().maxCoeff();
  return 10.0 * std::numeric_limits<double>::epsilon() * norm_inf * static_cast<double>(A.cols());
}

NnlsSolution solve_nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol) {
  const Index n = A.rows();
  const Index m = A.cols();
  if (n < 1 || m < 1) throw Error(ErrorKind::InvalidInput, "NNLS needs a nonempty matrix");
  if (b.size() != n) throw Error(ErrorKind::ShapeMismatch, "NNLS right-hand side length mismatch");
  if (!A.allFinite() || !b.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "NNLS inputs contain non-finite values");
  }
  if (tol <= 0.0) tol = default_nnls_tolerance(A);

  const Eigen::MatrixXd gram = A.transpose() * A;
  const Eigen::VectorXd atb = A.transpose() * b;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  std::vector<char> passive(static_cast<std::size_t>(m), 0);
  // A column whose entry immediately came back nonpositive is held out until
  // the passive set changes some other way; this stops round-off cycling.
  Index blocked = -1;
  int pivots = 0;
  const int max_pivots = 3 * static_cast<int>(m);

  while (true) {
    const Eigen::VectorXd dual = atb - gram * x;
    Index enter = -1;
    double best = tol;
    for (Index j = 0; j < m; ++j) {
      if (passive[static_cast<std::size_t>(j)] || j == blocked) continue;
      if (dual(j) > best) {
        best = dual(j);
        enter = j;
      }
    }
    if (enter < 0) break;
    if (pivots >= max_pivots) {
      throw Error(ErrorKind::MaxPivots,
                  "NNLS made " + std::to_string(pivots) + " pivots on " + std::to_string(m) +
                      " columns without terminating");
    }
    ++pivots;
    passive[static_cast<std::size_t>(enter)] = 1;
    blocked = -1;

    bool first = true;
    while (true) {
      std::vector<Index> pset;
      for (Index j = 0; j < m; ++j) {
        if (passive[static_cast<std::size_t>(j)]) pset.push_back(j);
      }
      if (pset.empty()) break;
      const Eigen::VectorXd z = solve_passive(gram, atb, pset);

      if (first) {
        first = false;
        for (std::size_t a = 0; a < pset.size(); ++a) {
          if (pset[a] == enter && !(z(static_cast<Index>(a)) > 0.0)) {
            passive[static_cast<std::size_t>(enter)] = 0;
            blocked = enter;
          }
        }
        if (blocked == enter) break;
      }

      bool feasible = true;
      for (Index a = 0; a < z.size(); ++a) feasible = feasible && z(a) > 0.0;
      if (feasible) {
        x.setZero();
        for (std::size_t a = 0; a < pset.size(); ++a) x(pset[a]) = z(static_cast<Index>(a));
        break;
      }

      // Step from x toward z until the first passive coordinate hits zero.
      double step = std::numeric_limits<double>::infinity();
      Index limiting = -1;
      for (std::size_t a = 0; a < pset.size(); ++a) {
        const double za = z(static_cast<Index>(a));
        if (za <= 0.0) {
          const double xa = x(pset[a]);
          const double ratio = xa / (xa - za);
          if (ratio < step) {
            step = ratio;
            limiting = pset[a];
          }
        }
      }
      for (std::size_t a = 0; a < pset.size(); ++a) {
        const Index j = pset[a];
        x(j) += step * (z(static_cast<Index>(a)) - x(j));
      }
      x(limiting) = 0.0;
      for (Index j : pset) {
        if (x(j) <= 0.0) {
          x(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = 0;
        }
      }
    }
  }

  NnlsSolution out;
  out.alpha = x;
  out.residual_norm = (b - A * x).norm();
  out.n_pivots = pivots;
  for (Index j = 0; j < m; ++j) {
    if (x(j) > 0.0) out.active_set.push_back(j);
  }
  return out;
}

}  // namespace irwal
