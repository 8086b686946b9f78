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

// Test-only helpers. Kept independent of the library's evaluation paths.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gsic/gsic.hpp"

namespace gsic::test_support {

/// Random traceless Hermitian d x d matrix.
inline ComplexMatrix random_traceless_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex{normal(rng), normal(rng)};
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  h.diagonal().array() -= h.trace() / static_cast<double>(d);
  return h;
}

/// Tr(A B) by explicit double loop.
inline Complex naive_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex s{0.0, 0.0};
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gsic::test_support
