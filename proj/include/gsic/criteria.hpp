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

// Separability functionals built from general SIC measurements.
//
// Bipartite: J_a(rho) = sum_k Tr((P_k (x) Q_k) rho) <= (a d^2 + 1)/(d(d+1))
// for every separable rho, when P and Q share the purity a.
//
// N-partite: J(rho) = sum_k Tr((P_k^(1) (x) ... (x) P_k^(N)) rho)
//            <= (1/N) sum_i (a_i d^2 + 1)/(d(d+1)) for fully separable rho.
//
// Both tests are one-sided. A violation certifies entanglement; the absence
// of one says nothing.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsic/errors.hpp"
#include "gsic/gsic_set.hpp"
#include "gsic/linalg.hpp"
#include "gsic/operator_basis.hpp"
#include "gsic/states.hpp"

namespace gsic {

enum class Verdict { EntangledDetected, Inconclusive };

inline const char* to_string(Verdict v) {
  return v == Verdict::EntangledDetected ? "ENTANGLED_DETECTED" : "INCONCLUSIVE";
}

struct DetectionReport {
  double j_value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  int d = 0;
  int parties = 0;
  std::vector<double> a_values;  // one per party
  std::vector<double> t_values;  // one per party
  std::string state_label;

  bool detected() const { return verdict == Verdict::EntangledDetected; }
};

namespace detail {

inline void require_purity_range(int d, double a, const char* who) {
  const double dd = d;
  const double lower = 1.0 / (dd * dd * dd), upper = 1.0 / (dd * dd);
  // The lower end is admitted: t = 0 gives the trivial set {I/d^2}, for which
  // the bound degenerates to 1/d^2 and still holds.
  if (!(a >= lower - kExactTolerance && a <= upper + kExactTolerance))
    throw InvalidArgument(std::string(who) + ": purity parameter a = " +
                          std::to_string(a) + " outside [1/d^3, 1/d^2]");
}

inline Verdict verdict_for(double margin, double decision_tol) {
  return margin > decision_tol ? Verdict::EntangledDetected : Verdict::Inconclusive;
}

}  // namespace detail

/// sum_k Tr((P_k (x) Q_k) rho) by contracting each product term against rho.
inline double j_bipartite(const DensityMatrix& rho, const GsicSet& p, const GsicSet& q) {
  if (rho.parties() != 2) throw InvalidArgument("j_bipartite: state must be bipartite");
  if (p.d != rho.local_dim() || q.d != rho.local_dim())
    throw InvalidArgument("j_bipartite: measurement dimension does not match state");
  if (p.size() != q.size() || p.size() != static_cast<std::size_t>(p.d) * p.d)
    throw InvalidArgument("j_bipartite: measurement sets must have d^2 elements");
  if (std::abs(p.a - q.a) > kExactTolerance)
    throw InvalidArgument("j_bipartite: measurement sets must share the parameter a");

  const int d = p.d;
  const ComplexMatrix& m = rho.matrix();
  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < p.size(); ++k) {
    const ComplexMatrix& pk = p.operators[k];
    const ComplexMatrix& qk = q.operators[k];
    // Tr((P (x) Q) rho) = sum P(i,j) Q(l,m) rho((j,m),(i,l)).
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Complex pij = pk(i, j);
        if (pij == Complex{0.0, 0.0}) continue;
        Complex inner{0.0, 0.0};
        for (int l = 0; l < d; ++l)
          for (int n = 0; n < d; ++n) inner += qk(l, n) * m(j * d + n, i * d + l);
        total += pij * inner;
      }
  }
  return checked_real(total, "j_bipartite");
}

/// (a d^2 + 1)/(d(d+1)).
inline double bipartite_bound(int d, double a) {
  if (d < 2) throw InvalidArgument("bipartite_bound: dimension must be >= 2");
  detail::require_purity_range(d, a, "bipartite_bound");
  const double dd = d;
  return (a * dd * dd + 1.0) / (dd * (dd + 1.0));
}

inline DetectionReport detect_bipartite(const DensityMatrix& rho, const GsicSet& p,
                                        const GsicSet& q, std::string label = {},
                                        double decision_tol = kDecisionTolerance) {
  DetectionReport r;
  r.j_value = j_bipartite(rho, p, q);
  r.bound = bipartite_bound(p.d, p.a);
  r.margin = r.j_value - r.bound;
  r.verdict = detail::verdict_for(r.margin, decision_tol);
  r.d = p.d;
  r.parties = 2;
  r.a_values = {p.a, q.a};
  r.t_values = {p.t, q.t};
  r.state_label = std::move(label);
  return r;
}

/// sum_k Tr((P_k^(1) (x) ... (x) P_k^(N)) rho), one measurement set per party.
inline double j_multipartite(const DensityMatrix& rho, std::span<const GsicSet> sets) {
  const int n = rho.parties();
  if (n < 2) throw InvalidArgument("j_multipartite: need at least two parties");
  if (sets.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("j_multipartite: need one measurement set per party");
  const int d = rho.local_dim();
  for (const auto& s : sets)
    if (s.d != d || s.size() != static_cast<std::size_t>(d) * d)
      throw InvalidArgument("j_multipartite: measurement dimension does not match state");

  std::vector<const ComplexMatrix*> factors(sets.size());
  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < sets.front().size(); ++k) {
    for (std::size_t i = 0; i < sets.size(); ++i) factors[i] = &sets[i].operators[k];
    total += product_expectation(factors, rho.matrix());
  }
  return checked_real(total, "j_multipartite");
}

/// (1/N) sum_i (a_i d^2 + 1)/(d(d+1)).
inline double multipartite_bound(int d, std::span<const double> a_values) {
  if (d < 2) throw InvalidArgument("multipartite_bound: dimension must be >= 2");
  if (a_values.empty()) throw InvalidArgument("multipartite_bound: empty parameter list");
  const double dd = d;
  double sum = 0.0;
  for (double a : a_values) {
    detail::require_purity_range(d, a, "multipartite_bound");
    sum += (a * dd * dd + 1.0) / (dd * (dd + 1.0));
  }
  return sum / static_cast<double>(a_values.size());
}

inline DetectionReport detect_multipartite(const DensityMatrix& rho,
                                           std::span<const GsicSet> sets,
                                           std::string label = {},
                                           double decision_tol = kDecisionTolerance) {
  DetectionReport r;
  r.j_value = j_multipartite(rho, sets);
  for (const auto& s : sets) {
    r.a_values.push_back(s.a);
    r.t_values.push_back(s.t);
  }
  r.bound = multipartite_bound(rho.local_dim(), r.a_values);
  r.margin = r.j_value - r.bound;
  r.verdict = detail::verdict_for(r.margin, decision_tol);
  r.d = rho.local_dim();
  r.parties = rho.parties();
  r.state_label = std::move(label);
  return r;
}

/// T_jk = Tr(rho (F_j (x) F_k)) over the generators of `basis`.
struct CorrelationMatrix {
  int d = 0;
  RealMatrix entries;

  double trace() const { return entries.trace(); }
};

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho,
                                            const GellMannBasis& basis) {
  if (rho.parties() != 2) throw InvalidArgument("correlation_matrix: state must be bipartite");
  if (basis.d != rho.local_dim())
    throw InvalidArgument("correlation_matrix: basis dimension does not match state");
  const auto n = static_cast<Eigen::Index>(basis.size());
  CorrelationMatrix t{basis.d, RealMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexMatrix* factors[2] = {&basis.generators[j], &basis.generators[k]};
      t.entries(j, k) =
          checked_real(product_expectation(factors, rho.matrix()), "correlation_matrix");
    }
  return t;
}

/// (d - 1)/(2d).
inline double trace_t_bound(int d) {
  if (d < 2) throw InvalidArgument("trace_t_bound: dimension must be >= 2");
  return (d - 1.0) / (2.0 * d);
}

/// 2 (a d^2 - 1/d)/(d^2 - 1), the weight on Tr(T) in the published
/// expansion J_a(rho) = 1/d^2 + w Tr(T) for the pairing Q = P.
///
/// With T normalized as in correlation_matrix (Tr(F_j F_k) = delta_jk) the
/// expansion actually holds with w/2; see correlation_weight_exact().
inline double correlation_weight(int d, double a) {
  const double dd = d;
  return 2.0 * (a * dd * dd - 1.0 / dd) / (dd * dd - 1.0);
}

/// (a d^2 - 1/d)/(d^2 - 1) = t^2 d^2 (d+1)^2: the weight that makes
/// J_a(rho) = 1/d^2 + w Tr(T) exact for T from correlation_matrix().
inline double correlation_weight_exact(int d, double a) {
  return 0.5 * correlation_weight(d, a);
}

// Measurement pairings -----------------------------------------------------

enum class Pairing { Conjugate, Same };

struct MeasurementPair {
  GsicSet first;
  GsicSet second;
};

inline MeasurementPair make_pairing(const GsicSet& p, Pairing pairing) {
  return {p, pairing == Pairing::Conjugate ? conjugate_gsic(p) : p};
}

/// Pairing adapted to the Bell state (U (x) I)|Phi+>: {U P_k U^dagger} on the
/// first party and {conj(P_k)} on the second. On that Bell state it attains
/// J = d a, exactly as the plain conjugate pairing does on |Phi+>.
inline MeasurementPair bell_adapted_pairing(const GsicSet& p, const WeylOperator& u) {
  if (u.d != p.d) throw InvalidArgument("bell_adapted_pairing: dimension mismatch");
  return {rotate_gsic(p, u.matrix), conjugate_gsic(p)};
}

// Threshold scans -----------------------------------------------------------

struct ScanRow {
  double param = 0.0;
  DetectionReport report;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::optional<double> threshold;  // smallest parameter at which detection fires
};

using StateFamily = std::function<DensityMatrix(double)>;

/// Evaluates the family on `steps` uniform points of [lo, hi], then bisects
/// between the last inconclusive and first detected grid points. Families
/// whose J - bound is monotone in the parameter get the exact crossing.
inline ScanResult scan_threshold(const StateFamily& family, double lo, double hi, int steps,
                                 const GsicSet& p, const GsicSet& q,
                                 double decision_tol = kDecisionTolerance) {
  if (steps < 10) throw InvalidArgument("scan_threshold: steps must be >= 10");
  if (!(hi > lo)) throw InvalidArgument("scan_threshold: empty parameter range");
  ScanResult result;
  result.rows.reserve(static_cast<std::size_t>(steps));
  auto detected_at = [&](double x) {
    return detect_bipartite(family(x), p, q, {}, decision_tol).detected();
  };

  std::optional<int> first;
  for (int i = 0; i < steps; ++i) {
    const double x = i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1);
    auto report = detect_bipartite(family(x), p, q, {}, decision_tol);
    if (!first && report.detected()) first = i;
    result.rows.push_back({x, std::move(report)});
  }
  if (!first) return result;
  if (*first == 0) {
    result.threshold = lo;
    return result;
  }

  double below = result.rows[static_cast<std::size_t>(*first - 1)].param;
  double above = result.rows[static_cast<std::size_t>(*first)].param;
  for (int iter = 0; iter < 200 && above - below > 1e-14; ++iter) {
    const double mid = 0.5 * (below + above);
    if (detected_at(mid))
      above = mid;
    else
      below = mid;
  }
  result.threshold = above;
  return result;
}

/// Smallest alpha at which the isotropic state is flagged, measuring with
/// P on one side and conj(P) on the other.
inline std::optional<double> isotropic_threshold_scan(int d, const GsicSet& p, int steps) {
  if (p.d != d) throw InvalidArgument("isotropic_threshold_scan: dimension mismatch");
  const GsicSet q = conjugate_gsic(p);
  return scan_threshold([d](double alpha) { return isotropic(d, alpha); }, 0.0, 1.0,
                        steps, p, q)
      .threshold;
}

/// (1 + 1/(a d^2))/(d + 1): above this dominant weight, Bell-diagonal and
/// diagonal-mixture states are guaranteed to be flagged, since J >= c d a.
inline double dominant_weight_threshold(int d, double a) {
  const double dd = d;
  return (1.0 + 1.0 / (a * dd * dd)) / (dd + 1.0);
}

}  // namespace gsic
