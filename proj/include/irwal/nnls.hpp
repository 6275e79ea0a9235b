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

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace irwal {

struct NnlsSolution {
  Eigen::VectorXd alpha;  // all entries >= 0
  double residual_norm = 0.0;
  std::vector<Eigen::Index> active_set;  // alpha > 0
  int n_pivots = 0;
};

// Default dual-feasibility tolerance: 10 * eps * ||A||_inf * m.
double default_nnls_tolerance(const Eigen::MatrixXd& A);

// min ||b - A alpha||_2 subject to alpha >= 0, by the Lawson-Hanson active
// set method. Entering columns are chosen by largest dual value, ties to the
// lowest index. tol <= 0 selects default_nnls_tolerance(A).
NnlsSolution solve_nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 0.0);

}  // namespace irwal
