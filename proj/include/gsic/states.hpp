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

// Density matrices of N qudits with equal local dimension, the standard
// state families used to exercise the separability criteria, and the usual
// tensor / partial transpose plumbing.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsic/errors.hpp"
#include "gsic/linalg.hpp"
#include "gsic/validation.hpp"

namespace gsic {

/// Hermiticity, unit trace and positivity of a candidate state matrix.
inline ValidationOutcome validate_density(const ComplexMatrix& m,
                                          double tol = kDefaultTolerance) {
  ValidationOutcome out;
  out.tolerance = tol;
  out.add("hermiticity", hermiticity_deviation(m));
  out.add("trace", std::abs(m.trace() - 1.0));
  out.add("psd", std::max(0.0, -min_eigenvalue(m)));
  return out;
}

/// A validated state on (C^d)^{(x)N}. Immutable once built.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, int local_dim, int parties,
                double tol = kDefaultTolerance)
      : matrix_(std::move(matrix)), local_dim_(local_dim), parties_(parties) {
    if (local_dim < 2) throw InvalidArgument("DensityMatrix: local_dim must be >= 2");
    if (parties < 1) throw InvalidArgument("DensityMatrix: parties must be >= 1");
    const int dim = ipow(local_dim, parties);
    if (matrix_.rows() != dim || matrix_.cols() != dim)
      throw InvalidArgument("DensityMatrix: matrix is " +
                            std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " +
                            std::to_string(dim) + "x" + std::to_string(dim));
    const auto check = validate_density(matrix_, tol);
    if (!check.passed())
      throw InvalidArgument("DensityMatrix: not a valid state (" + check.summary() + ")");
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  int local_dim() const { return local_dim_; }
  int parties() const { return parties_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Tr(rho^2).
  double purity() const { return trace_of_product(matrix_, matrix_).real(); }

 private:
  ComplexMatrix matrix_;
  int local_dim_;
  int parties_;
};

/// Clock-and-shift unitary U_{s,t} = sum_j zeta^{s j} |j><j+t mod d|.
struct WeylOperator {
  int d = 0;
  int s = 0;
  int t_idx = 0;
  ComplexMatrix matrix;
};

inline WeylOperator weyl_operator(int d, int s, int t_idx) {
  if (d < 2) throw InvalidArgument("weyl_operator: dimension must be >= 2");
  if (s < 0 || s >= d || t_idx < 0 || t_idx >= d)
    throw InvalidArgument("weyl_operator: index out of range");
  WeylOperator u{d, s, t_idx, ComplexMatrix::Zero(d, d)};
  for (int j = 0; j < d; ++j) {
    // Reduce s*j mod d before taking the phase so U_{0,t} is exactly real.
    const int k = (s * j) % d;
    const Complex phase = k == 0 ? Complex{1.0, 0.0}
                                 : std::polar(1.0, 2.0 * kPi * k / d);
    u.matrix(j, (j + t_idx) % d) = phase;
  }
  return u;
}

/// |Phi+> = d^{-1/2} sum_i |ii>.
inline Eigen::VectorXcd max_entangled_vector(int d) {
  if (d < 2) throw InvalidArgument("max_entangled: dimension must be >= 2");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = amp;
  return v;
}

inline DensityMatrix max_entangled(int d) {
  const auto v = max_entangled_vector(d);
  return DensityMatrix(v * v.adjoint(), d, 2);
}

/// alpha |Phi+><Phi+| + (1 - alpha) I / d^2.
inline DensityMatrix isotropic(int d, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvalidArgument("isotropic: alpha must lie in [0, 1]");
  const auto v = max_entangled_vector(d);
  ComplexMatrix m = alpha * (v * v.adjoint());
  m += ((1.0 - alpha) / (d * d)) * identity(d * d);
  return DensityMatrix(std::move(m), d, 2);
}

/// (U_{s,t} (x) I)|Phi+>.
inline Eigen::VectorXcd bell_vector(int d, int s, int t_idx) {
  const auto u = weyl_operator(d, s, t_idx);
  return kron(u.matrix, identity(d)) * max_entangled_vector(d);
}

struct BellDiagonalState {
  DensityMatrix state;
  double c = 0.0;  // largest weight
  int s_max = 0;   // location of the largest weight (first in row-major order)
  int t_max = 0;
};

/// sum_{s,t} p(s,t) |Phi_{s,t}><Phi_{s,t}| with p given as a d x d table.
inline BellDiagonalState bell_diagonal(int d, const RealMatrix& weights) {
  if (d < 2) throw InvalidArgument("bell_diagonal: dimension must be >= 2");
  if (weights.rows() != d || weights.cols() != d)
    throw InvalidArgument("bell_diagonal: weights must be a d x d table");
  if ((weights.array() < 0.0).any() || !weights.allFinite())
    throw InvalidArgument("bell_diagonal: weights must be non-negative");
  if (std::abs(weights.sum() - 1.0) > kExactTolerance)
    throw InvalidArgument("bell_diagonal: weights must sum to 1");

  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  double c = -1.0;
  int s_max = 0, t_max = 0;
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const double p = weights(s, t);
      if (p > c) {
        c = p;
        s_max = s;
        t_max = t;
      }
      if (p == 0.0) continue;
      const auto v = bell_vector(d, s, t);
      m += p * (v * v.adjoint());
    }
  return {DensityMatrix(std::move(m), d, 2), c, s_max, t_max};
}

/// a_1 |Phi+><Phi+| + sum_{k=0}^{d-1} sum_{i=2}^{d} (a_i/d) |k><k| (x) |k+i-1><k+i-1|
/// with the second index taken mod d. `weights` holds a_1..a_d.
inline DensityMatrix diagonal_mixture_state(int d, std::span<const double> weights) {
  if (d < 2) throw InvalidArgument("diagonal_mixture_state: dimension must be >= 2");
  if (weights.size() != static_cast<std::size_t>(d))
    throw InvalidArgument("diagonal_mixture_state: need exactly d weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidArgument("diagonal_mixture_state: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kExactTolerance)
    throw InvalidArgument("diagonal_mixture_state: weights must sum to 1");

  const auto v = max_entangled_vector(d);
  ComplexMatrix m = weights[0] * (v * v.adjoint());
  for (int k = 0; k < d; ++k)
    for (int i = 2; i <= d; ++i) {
      const int l = (k + i - 1) % d;
      m(k * d + l, k * d + l) += weights[static_cast<std::size_t>(i - 1)] / d;
    }
  return DensityMatrix(std::move(m), d, 2);
}

/// Special case a_2 = ... = a_d = (1 - a_1)/(d - 1).
inline DensityMatrix diagonal_mixture_state(int d, double a1) {
  if (!(a1 > 0.0 && a1 < 1.0))
    throw InvalidArgument("diagonal_mixture_state: a1 must lie in (0, 1)");
  if (d < 2) throw InvalidArgument("diagonal_mixture_state: dimension must be >= 2");
  std::vector<double> w(static_cast<std::size_t>(d), (1.0 - a1) / (d - 1));
  w[0] = a1;
  return diagonal_mixture_state(d, std::span<const double>(w));
}

inline ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  return kron(factors);
}

/// Transposes the indices of `party` (0-based) in a d^N x d^N matrix.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int local_dim,
                                       int parties, int party) {
  if (party < 0 || party >= parties)
    throw InvalidArgument("partial_transpose: party index out of range");
  const int dim = ipow(local_dim, parties);
  if (m.rows() != dim || m.cols() != dim)
    throw InvalidArgument("partial_transpose: dimension mismatch");
  // Index = high * (d * low_size) + digit * low_size + low.
  const int low_size = ipow(local_dim, parties - party - 1);
  ComplexMatrix out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int rd = (r / low_size) % local_dim;
    const int r_base = r - rd * low_size;
    for (int c = 0; c < dim; ++c) {
      const int cd = (c / low_size) % local_dim;
      const int c_base = c - cd * low_size;
      out(r_base + cd * low_size, c_base + rd * low_size) = m(r, c);
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, int party) {
  return partial_transpose(rho.matrix(), rho.local_dim(), rho.parties(), party);
}

/// Marginal state of a single party (0-based).
inline ComplexMatrix reduced_state(const DensityMatrix& rho, int party) {
  const int d = rho.local_dim();
  const int n = rho.parties();
  if (party < 0 || party >= n) throw InvalidArgument("reduced_state: party out of range");
  const int low_size = ipow(d, n - party - 1);
  const int high_size = ipow(d, party);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int hi = 0; hi < high_size; ++hi)
    for (int lo = 0; lo < low_size; ++lo)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const int r = (hi * d + a) * low_size + lo;
          const int c = (hi * d + b) * low_size + lo;
          out(a, b) += rho.matrix()(r, c);
        }
  return out;
}

/// Normalized complex Gaussian vector, i.e. a Haar-random pure state.
inline Eigen::VectorXcd random_pure_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex{re, im};
  }
  return v / v.norm();
}

/// Convex mixture of `terms` random pure product states with weights from a
/// normalized uniform draw. Deterministic in `seed`.
inline DensityMatrix random_separable(int d, int parties, int terms, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("random_separable: dimension must be >= 2");
  if (parties < 1) throw InvalidArgument("random_separable: parties must be >= 1");
  if (terms < 1) throw InvalidArgument("random_separable: terms must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : weights) {
    w = uniform(rng) + 1e-12;
    total += w;
  }
  const int dim = ipow(d, parties);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < terms; ++k) {
    Eigen::VectorXcd v = random_pure_vector(d, rng);
    for (int p = 1; p < parties; ++p) {
      const Eigen::VectorXcd next = random_pure_vector(d, rng);
      Eigen::VectorXcd joined(v.size() * d);
      for (Eigen::Index i = 0; i < v.size(); ++i)
        joined.segment(i * d, d) = v(i) * next;
      v = std::move(joined);
    }
    m += (weights[static_cast<std::size_t>(k)] / total) * (v * v.adjoint());
  }
  return DensityMatrix(std::move(m), d, parties);
}

/// G G^dagger / Tr(G G^dagger) for a dim x rank complex Gaussian G. rank = 0
/// means full rank. Generic mixed states for property tests.
inline DensityMatrix random_density_matrix(int d, int parties, std::uint64_t seed,
                                           int rank = 0) {
  const int dim = ipow(d, parties);
  if (rank <= 0 || rank > dim) rank = dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex{re, im};
    }
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(m), d, parties);
}

}  // namespace gsic
