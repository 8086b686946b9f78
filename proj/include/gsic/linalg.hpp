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

// Dense complex linear algebra shared by every module. Matrices are Eigen
// dynamic complex matrices; tensor products put the first factor in the most
// significant index position.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gsic/errors.hpp"

namespace gsic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Default tolerances.
inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kDecisionTolerance = 1e-9;
inline constexpr double kImaginaryResidueLimit = 1e-8;

/// Integer power for dimensions; throws if the result overflows int.
inline int ipow(int base, int exponent) {
  long long r = 1;
  for (int i = 0; i < exponent; ++i) {
    r *= base;
    if (r > (1LL << 30)) throw InvalidArgument("dimension overflow");
  }
  return static_cast<int>(r);
}

inline ComplexMatrix identity(int dim) {
  return ComplexMatrix::Identity(dim, dim);
}

/// max |M - M^dagger| over all entries.
inline double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues of the Hermitian part (M + M^dagger)/2.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

inline double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

/// Tr(AB) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw InvalidArgument("trace_of_product: shape mismatch");
  return (a.array() * b.transpose().array()).sum();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("kron: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

/// Tr((F_1 (x) ... (x) F_N) rho) for equal-size square factors, contracted
/// index by index without building the d^N x d^N product operator.
inline Complex product_expectation(std::span<const ComplexMatrix* const> factors,
                                   const ComplexMatrix& rho) {
  if (factors.empty()) throw InvalidArgument("product_expectation: no factors");
  const int d = static_cast<int>(factors.front()->rows());
  const int n = static_cast<int>(factors.size());
  const int dim = ipow(d, n);
  if (rho.rows() != dim || rho.cols() != dim)
    throw InvalidArgument("product_expectation: state dimension mismatch");
  for (const ComplexMatrix* f : factors)
    if (f->rows() != d || f->cols() != d)
      throw InvalidArgument("product_expectation: factor dimension mismatch");

  // digits[k * n + i] is the i-th (most significant first) base-d digit of k.
  std::vector<int> digits(static_cast<std::size_t>(dim) * n);
  for (int k = 0; k < dim; ++k) {
    int rest = k;
    for (int i = n - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(k) * n + i] = rest % d;
      rest /= d;
    }
  }

  Complex total{0.0, 0.0};
  for (int r = 0; r < dim; ++r) {
    const int* rd = &digits[static_cast<std::size_t>(r) * n];
    for (int c = 0; c < dim; ++c) {
      const Complex rho_cr = rho(c, r);
      if (rho_cr == Complex{0.0, 0.0}) continue;
      const int* cd = &digits[static_cast<std::size_t>(c) * n];
      Complex term = rho_cr;
      for (int i = 0; i < n; ++i) {
        term *= (*factors[i])(rd[i], cd[i]);
        if (term == Complex{0.0, 0.0}) break;
      }
      total += term;
    }
  }
  return total;
}

/// Real part of z after checking |Im z| against the integrity limit.
inline double checked_real(Complex z, const char* what) {
  if (std::abs(z.imag()) > kImaginaryResidueLimit)
    throw NumericIntegrityError(std::string(what) + ": imaginary residue " +
                                std::to_string(z.imag()));
  return z.real();
}

}  // namespace gsic
