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

// General symmetric informationally complete measurements built from an
// orthonormal traceless Hermitian basis {F_k}:
//
//   P_k     = I/d^2 + t [F - d(d+1) F_k],   k = 1 .. d^2-1
//   P_{d^2} = I/d^2 + t (d+1) F
//
// with common purity a = Tr(P_k^2) = 1/d^3 + t^2 (d-1)(d+1)^3.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "gsic/errors.hpp"
#include "gsic/linalg.hpp"
#include "gsic/operator_basis.hpp"
#include "gsic/states.hpp"
#include "gsic/validation.hpp"

namespace gsic {

/// d^2 positive operators summing to the identity with equal purity a and
/// equal pairwise overlaps (1 - d a)/(d (d^2 - 1)).
struct GsicSet {
  int d = 0;
  double t = 0.0;
  double a = 0.0;
  std::vector<ComplexMatrix> operators;
  std::string basis_id;

  std::size_t size() const { return operators.size(); }
};

/// a(t) = 1/d^3 + t^2 (d-1)(d+1)^3.
inline double purity_parameter(int d, double t) {
  const double dd = d;
  return 1.0 / (dd * dd * dd) + t * t * (dd - 1.0) * (dd + 1.0) * (dd + 1.0) * (dd + 1.0);
}

/// The t >= 0 with a(t) = 1/d^2, i.e. (d(d+1))^{-3/2}.
inline double rank_one_t(int d) {
  const double dd = d;
  return std::pow(dd * (dd + 1.0), -1.5);
}

/// Pairwise overlap Tr(P_j P_k), j != k, implied by purity a.
inline double cross_overlap(int d, double a) {
  const double dd = d;
  return (1.0 - dd * a) / (dd * (dd * dd - 1.0));
}

namespace detail {

inline std::vector<ComplexMatrix> gsic_operators(const GellMannBasis& basis, double t) {
  const int d = basis.d;
  const double base = 1.0 / (static_cast<double>(d) * d);
  const double scale = static_cast<double>(d) * (d + 1);
  std::vector<ComplexMatrix> ops;
  ops.reserve(basis.size() + 1);
  for (const auto& f : basis.generators) {
    ComplexMatrix p = t * (basis.f_sum - scale * f);
    p.diagonal().array() += base;
    ops.push_back(std::move(p));
  }
  ComplexMatrix last = (t * (d + 1.0)) * basis.f_sum;
  last.diagonal().array() += base;
  ops.push_back(std::move(last));
  return ops;
}

struct MinEigen {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

inline MinEigen min_eigen_over(const std::vector<ComplexMatrix>& ops) {
  MinEigen m;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double e = min_eigenvalue(ops[k]);
    if (e < m.value) m = {e, k};
  }
  return m;
}

inline void require_valid_basis(const GellMannBasis& basis) {
  const auto check = verify_basis(basis);
  if (!check.passed())
    throw InvalidArgument("invalid operator basis (" + check.summary() + ")");
}

}  // namespace detail

/// Smallest eigenvalue over all operators of the construction at t.
inline double min_operator_eigenvalue(const GellMannBasis& basis, double t) {
  return detail::min_eigen_over(detail::gsic_operators(basis, t)).value;
}

/// Builds the measurement set at parameter t. Throws InfeasibleParameter if
/// some operator has an eigenvalue below -1e-10.
inline GsicSet construct_gsic(const GellMannBasis& basis, double t) {
  detail::require_valid_basis(basis);
  if (!std::isfinite(t)) throw InvalidArgument("construct_gsic: t must be finite");
  auto ops = detail::gsic_operators(basis, t);
  const auto worst = detail::min_eigen_over(ops);
  if (worst.value < -kPsdTolerance) throw InfeasibleParameter(worst.index, worst.value, t);
  return {basis.d, t, purity_parameter(basis.d, t), std::move(ops), basis.id};
}

enum class ParameterCap { Positivity, RankOne };

inline const char* to_string(ParameterCap cap) {
  return cap == ParameterCap::Positivity ? "positivity" : "a-max";
}

struct FeasibleT {
  double t = 0.0;
  ParameterCap cap = ParameterCap::Positivity;
};

/// Largest t >= 0 keeping every operator positive semidefinite, capped where
/// a(t) reaches 1/d^2, and which of the two limits was active.
///
/// The minimum eigenvalue over the family is concave in t and equal to 1/d^2
/// at t = 0, so the feasible set is an interval [0, t*]. Positivity also forces
/// Tr(P^2) <= Tr(P)^2 = 1/d^2, hence t* never exceeds the rank-one value and
/// [0, rank_one_t] always brackets it.
inline FeasibleT feasible_t_limit(const GellMannBasis& basis,
                                  double precision = kExactTolerance) {
  detail::require_valid_basis(basis);
  const double t_cap = rank_one_t(basis.d);
  if (min_operator_eigenvalue(basis, t_cap) >= 0.0) return {t_cap, ParameterCap::RankOne};

  double lo = 0.0, hi = t_cap;
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    if (min_operator_eigenvalue(basis, mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const auto cap = t_cap - lo <= precision ? ParameterCap::RankOne : ParameterCap::Positivity;
  return {lo, cap};
}

inline double max_feasible_t(const GellMannBasis& basis) {
  return feasible_t_limit(basis).t;
}

/// Entrywise complex conjugate of every operator; same d, t and a.
inline GsicSet conjugate_gsic(const GsicSet& g) {
  GsicSet out = g;
  for (auto& p : out.operators) p = p.conjugate().eval();
  out.basis_id = g.basis_id + "+conj";
  return out;
}

/// {U P_k U^dagger}: a unitary rotation preserves every defining condition.
inline GsicSet rotate_gsic(const GsicSet& g, const ComplexMatrix& unitary) {
  if (unitary.rows() != g.d || unitary.cols() != g.d)
    throw InvalidArgument("rotate_gsic: unitary dimension mismatch");
  if ((unitary * unitary.adjoint() - identity(g.d)).cwiseAbs().maxCoeff() > kDefaultTolerance)
    throw InvalidArgument("rotate_gsic: matrix is not unitary");
  GsicSet out = g;
  for (auto& p : out.operators) p = (unitary * p * unitary.adjoint()).eval();
  out.basis_id = g.basis_id + "+rotated";
  return out;
}

/// Checks completeness, Tr(P_k) = 1/d, equal purity, equal cross overlaps,
/// positivity, a = a(t), and 1/d^3 <= a <= 1/d^2.
inline ValidationOutcome validate_gsic(const GsicSet& g, double tol = kDefaultTolerance) {
  ValidationOutcome out;
  out.tolerance = tol;
  const int d = g.d;
  const bool shape_ok =
      d >= 2 && g.operators.size() == static_cast<std::size_t>(d) * d &&
      std::all_of(g.operators.begin(), g.operators.end(),
                  [d](const ComplexMatrix& p) { return p.rows() == d && p.cols() == d; });
  out.add("count", shape_ok ? 0.0 : 1.0);
  if (!shape_ok) return out;

  const double dd = d;
  const double overlap = cross_overlap(d, g.a);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  double herm = 0.0, trace = 0.0, purity = 0.0, cross = 0.0, psd = 0.0;
  for (std::size_t j = 0; j < g.operators.size(); ++j) {
    const auto& pj = g.operators[j];
    sum += pj;
    herm = std::max(herm, hermiticity_deviation(pj));
    trace = std::max(trace, std::abs(pj.trace() - 1.0 / dd));
    psd = std::max(psd, -min_eigenvalue(pj));
    purity = std::max(purity, std::abs(trace_of_product(pj, pj) - g.a));
    for (std::size_t k = j + 1; k < g.operators.size(); ++k)
      cross = std::max(cross, std::abs(trace_of_product(pj, g.operators[k]) - overlap));
  }
  out.add("completeness", (sum - identity(d)).cwiseAbs().maxCoeff());
  out.add("hermiticity", herm);
  out.add("trace", trace);
  out.add("purity", purity);
  out.add("cross_overlap", cross);
  out.add("psd", std::max(0.0, psd));
  out.add("purity_formula", std::abs(g.a - purity_parameter(d, g.t)));
  const double lower = 1.0 / (dd * dd * dd), upper = 1.0 / (dd * dd);
  out.add("purity_range", std::max({0.0, lower - g.a, g.a - upper}));
  return out;
}

/// sum_k [Tr(P_k rho)]^2 by direct summation.
inline double index_of_coincidence(const GsicSet& g, const DensityMatrix& rho) {
  if (rho.parties() != 1 || rho.local_dim() != g.d)
    throw InvalidArgument("index_of_coincidence: state must be a single d-level system");
  double total = 0.0;
  for (const auto& p : g.operators) {
    const double prob = checked_real(trace_of_product(p, rho.matrix()), "Tr(P rho)");
    total += prob * prob;
  }
  return total;
}

/// Closed form [(a d^3 - 1) Tr(rho^2) + d (1 - a d)] / (d (d^2 - 1)).
inline double index_of_coincidence_formula(int d, double a, double state_purity) {
  const double dd = d;
  return ((a * dd * dd * dd - 1.0) * state_purity + dd * (1.0 - a * dd)) /
         (dd * (dd * dd - 1.0));
}

}  // namespace gsic
