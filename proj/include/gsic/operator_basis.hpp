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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gsic/errors.hpp"
#include "gsic/linalg.hpp"
#include "gsic/validation.hpp"

namespace gsic {

/// Orthonormal traceless Hermitian operator basis {F_k} on C^d, with
/// Tr(F_j F_k) = delta_jk, together with the sum F = sum_k F_k.
struct GellMannBasis {
  int d = 0;
  std::vector<ComplexMatrix> generators;
  ComplexMatrix f_sum;
  std::string id = "gellmann";

  std::size_t size() const { return generators.size(); }
};

/// Generalized Gell-Mann matrices normalized to Tr(F_j F_k) = delta_jk.
///
/// Ordering is fixed so constructions are reproducible: all symmetric
/// (|j><k| + |k><j|)/sqrt2 for j < k in lexicographic order, then all
/// antisymmetric -i(|j><k| - |k><j|)/sqrt2 in the same order, then the
/// diagonal operators (sum_{m<l} |m><m| - l|l><l|)/sqrt(l(l+1)), l = 1..d-1.
inline GellMannBasis build_gell_mann_basis(int d) {
  if (d < 2) throw InvalidArgument("build_gell_mann_basis: dimension must be >= 2");
  GellMannBasis basis;
  basis.d = d;
  basis.generators.reserve(static_cast<std::size_t>(d) * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.generators.push_back(std::move(m));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = Complex{0.0, -inv_sqrt2};
      m(k, j) = Complex{0.0, inv_sqrt2};
      basis.generators.push_back(std::move(m));
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int q = 0; q < l; ++q) m(q, q) = norm;
    m(l, l) = -l * norm;
    basis.generators.push_back(std::move(m));
  }

  basis.f_sum = ComplexMatrix::Zero(d, d);
  for (const auto& g : basis.generators) basis.f_sum += g;
  return basis;
}

/// Reports worst-case deviations from orthonormality, tracelessness,
/// Hermiticity and the F = sum F_k bookkeeping. Pass iff all are <= tol.
inline ValidationOutcome verify_basis(const GellMannBasis& basis,
                                      double tol = kDefaultTolerance) {
  ValidationOutcome out;
  out.tolerance = tol;
  const auto n = basis.generators.size();
  const bool shape_ok =
      basis.d >= 2 && n == static_cast<std::size_t>(basis.d) * basis.d - 1;
  out.add("count", shape_ok ? 0.0 : 1.0);
  if (!shape_ok) return out;

  double ortho = 0.0, trace = 0.0, herm = 0.0;
  ComplexMatrix sum = ComplexMatrix::Zero(basis.d, basis.d);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& fa = basis.generators[a];
    herm = std::max(herm, hermiticity_deviation(fa));
    trace = std::max(trace, std::abs(fa.trace()));
    sum += fa;
    for (std::size_t b = a; b < n; ++b) {
      const Complex tr = trace_of_product(fa, basis.generators[b]);
      ortho = std::max(ortho, std::abs(tr - (a == b ? 1.0 : 0.0)));
    }
  }
  out.add("orthonormality", ortho);
  out.add("trace", trace);
  out.add("hermiticity", herm);
  const double fsum = basis.f_sum.rows() == basis.d && basis.f_sum.cols() == basis.d
                          ? (basis.f_sum - sum).cwiseAbs().maxCoeff()
                          : 1.0;
  out.add("f_sum", fsum);
  return out;
}

}  // namespace gsic
