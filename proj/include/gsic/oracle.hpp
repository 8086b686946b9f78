// Copyright 2026 The gsic-detect Authors
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

// Ground truth used to cross-check the criteria. Nothing here shares code
// with the contraction path in criteria.hpp.

#pragma once

#include <cstddef>
#include <vector>

#include "gsic/errors.hpp"
#include "gsic/linalg.hpp"
#include "gsic/states.hpp"

namespace gsic {

struct PptResult {
  double min_eigenvalue = 0.0;
  bool npt = false;  // true certifies entanglement
};

/// Peres-Horodecki test: eigenvalues of the partial transpose on the second
/// party; NPT when the smallest is below -1e-10.
inline PptResult ppt_test(const DensityMatrix& rho) {
  if (rho.parties() != 2) throw InvalidArgument("ppt_test: state must be bipartite");
  const double e = min_eigenvalue(partial_transpose(rho, 1));
  return {e, e < -kPsdTolerance};
}

/// sum_k Tr(O_k rho) where O_k = operator_lists[0][k] (x) operator_lists[1][k] (x) ...
/// is materialized as a full matrix and multiplied by rho.
inline double brute_force_j(const ComplexMatrix& rho,
                            const std::vector<std::vector<ComplexMatrix>>& operator_lists) {
  if (operator_lists.empty()) throw InvalidArgument("brute_force_j: no operator lists");
  const std::size_t terms = operator_lists.front().size();
  long long dim = 1;
  for (const auto& list : operator_lists) {
    if (list.size() != terms)
      throw InvalidArgument("brute_force_j: operator lists differ in length");
    if (list.empty()) throw InvalidArgument("brute_force_j: empty operator list");
    dim *= list.front().rows();
  }
  if (rho.rows() != dim || rho.cols() != dim)
    throw InvalidArgument("brute_force_j: state dimension mismatch");

  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < terms; ++k) {
    ComplexMatrix product = operator_lists.front()[k];
    for (std::size_t i = 1; i < operator_lists.size(); ++i)
      product = kron(product, operator_lists[i][k]);
    if (product.rows() != dim) throw InvalidArgument("brute_force_j: dimension mismatch");
    const ComplexMatrix full = product * rho;
    total += full.trace();
  }
  return checked_real(total, "brute_force_j");
}

}  // namespace gsic
