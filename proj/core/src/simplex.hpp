// Copyright 2026 The corrq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORRQ_SRC_SIMPLEX_HPP_
#define CORRQ_SRC_SIMPLEX_HPP_

#include <vector>

namespace corrq::lp {

// maximize c.x  subject to  A_ub x <= b_ub, A_eq x = b_eq, x >= 0.
struct Problem {
  int variables = 0;
  std::vector<double> objective;            // size = variables
  std::vector<std::vector<double>> a_ub;    // rows
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

struct Solution {
  bool feasible = false;
  bool bounded = true;
  double objective_value = 0.0;
  std::vector<double> x;
};

// Dense two-phase tableau simplex with Bland's rule. Deterministic; meant
// for the small correlated-equilibrium programs in this project, not for
// large-scale use.
Solution solve(const Problem& problem);

}  // namespace corrq::lp

#endif  // CORRQ_SRC_SIMPLEX_HPP_
