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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

#include "gsic/criteria.hpp"
#include "gsic/oracle.hpp"
#include "support.hpp"

using namespace gsic;

namespace {

GsicSet at_fraction(int d, double fraction) {
  const auto basis = build_gell_mann_basis(d);
  return construct_gsic(basis, fraction * max_feasible_t(basis));
}

}  // namespace

TEST(criteria, maximally_mixed_state_gives_inverse_d_squared) {
  for (int d = 2; d <= 4; ++d) {
    const auto p = at_fraction(d, 1.0);
    const auto rho = isotropic(d, 0.0);
    EXPECT_NEAR(j_bipartite(rho, p, p), 1.0 / (d * d), 1e-14);
    EXPECT_NEAR(j_bipartite(rho, p, conjugate_gsic(p)), 1.0 / (d * d), 1e-14);
  }
}

TEST(criteria, maximally_entangled_state_reaches_d_times_a) {
  for (int d = 2; d <= 5; ++d)
    for (double f : {0.0, 0.5, 1.0}) {
      const auto p = at_fraction(d, f);
      const double j = j_bipartite(max_entangled(d), p, conjugate_gsic(p));
      EXPECT_NEAR(j, d * p.a, 1e-12) << "d=" << d << " f=" << f;
    }
}

TEST(criteria, isotropic_value_is_affine_in_alpha) {
  for (int d = 2; d <= 4; ++d) {
    const auto p = at_fraction(d, 1.0);
    const auto q = conjugate_gsic(p);
    for (double alpha : {0.0, 0.1, 0.37, 0.9, 1.0})
      EXPECT_NEAR(j_bipartite(isotropic(d, alpha), p, q),
                  d * p.a * alpha + (1 - alpha) / (d * d), 1e-12);
  }
}

TEST(criteria, bipartite_bound_values) {
  EXPECT_DOUBLE_EQ(bipartite_bound(2, 1.0 / 8), 0.25);
  EXPECT_DOUBLE_EQ(bipartite_bound(2, 1.0 / 4), 1.0 / 3);
  for (int d = 2; d <= 6; ++d)
    EXPECT_NEAR(bipartite_bound(d, 1.0 / (d * d * d)), 1.0 / (d * d), 1e-15);
  EXPECT_THROW(bipartite_bound(2, 0.3), InvalidArgument);
  EXPECT_THROW(bipartite_bound(2, 0.1), InvalidArgument);
  EXPECT_THROW(bipartite_bound(1, 0.5), InvalidArgument);
}

TEST(criteria, maximally_entangled_detected_for_positive_t) {
  for (int d = 2; d <= 5; ++d)
    for (double f : {0.1, 0.5, 1.0}) {
      const auto p = at_fraction(d, f);
      const auto r = detect_bipartite(max_entangled(d), p, conjugate_gsic(p), "maxent");
      EXPECT_TRUE(r.detected()) << "d=" << d << " f=" << f;
      EXPECT_NEAR(r.margin, r.j_value - r.bound, 0.0);
      EXPECT_EQ(r.state_label, "maxent");
    }
  // t = 0 sits exactly on the bound.
  const auto trivial = at_fraction(3, 0.0);
  const auto r = detect_bipartite(max_entangled(3), trivial, trivial);
  EXPECT_FALSE(r.detected());
  EXPECT_NEAR(r.margin, 0.0, 1e-14);
}

TEST(criteria, separable_isotropic_states_inconclusive) {
  for (int d = 2; d <= 5; ++d) {
    const auto p = at_fraction(d, 1.0);
    const auto q = conjugate_gsic(p);
    for (double alpha : {0.0, 0.5 / (d + 1), 1.0 / (d + 1)})
      EXPECT_FALSE(detect_bipartite(isotropic(d, alpha), p, q).detected());
  }
}

TEST(criteria, random_separable_never_detected) {
  for (int d : {2, 3}) {
    const auto full = at_fraction(d, 1.0);
    const auto half = at_fraction(d, 0.5);
    const std::vector<MeasurementPair> pairs{
        make_pairing(full, Pairing::Same), make_pairing(full, Pairing::Conjugate),
        make_pairing(half, Pairing::Same), make_pairing(half, Pairing::Conjugate)};
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto rho = random_separable(d, 2, 10, seed);
      for (const auto& pair : pairs)
        ASSERT_FALSE(detect_bipartite(rho, pair.first, pair.second).detected())
            << "d=" << d << " seed=" << seed;
    }
  }
}

TEST(criteria, j_bipartite_argument_checks) {
  const auto p2 = at_fraction(2, 1.0);
  const auto p2_half = at_fraction(2, 0.5);
  const auto p3 = at_fraction(3, 1.0);
  EXPECT_THROW(j_bipartite(max_entangled(2), p2, p2_half), InvalidArgument);
  EXPECT_THROW(j_bipartite(max_entangled(3), p2, p2), InvalidArgument);
  EXPECT_THROW(j_bipartite(max_entangled(2), p2, p3), InvalidArgument);
  EXPECT_THROW(j_bipartite(random_separable(2, 3, 2, 1), p2, p2), InvalidArgument);
}

TEST(criteria, non_hermitian_measurement_trips_integrity_check) {
  auto p = at_fraction(2, 1.0);
  p.operators[0](0, 1) += Complex(0.0, 0.3);
  EXPECT_THROW(j_bipartite(random_density_matrix(2, 2, 5), p, p), NumericIntegrityError);
}

TEST(criteria, multipartite_reduces_to_bipartite) {
  for (int d = 2; d <= 4; ++d) {
    const auto p = at_fraction(d, 0.8);
    const auto q = conjugate_gsic(p);
    const std::vector<GsicSet> sets{p, q};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rho = random_density_matrix(d, 2, seed);
      EXPECT_NEAR(j_multipartite(rho, sets), j_bipartite(rho, p, q), 1e-12);
    }
  }
}

TEST(criteria, multipartite_on_maximally_mixed_state) {
  for (int d : {2, 3})
    for (int n : {2, 3}) {
      const int dim = ipow(d, n);
      const DensityMatrix rho(identity(dim) / dim, d, n);
      const std::vector<GsicSet> sets(static_cast<std::size_t>(n), at_fraction(d, 1.0));
      EXPECT_NEAR(j_multipartite(rho, sets), std::pow(d, 2 - 2 * n), 1e-14);
    }
}

TEST(criteria, multipartite_product_basis_state_matches_diagonal_products) {
  const std::vector<GsicSet> sets{at_fraction(2, 1.0), conjugate_gsic(at_fraction(2, 0.5)),
                                  at_fraction(2, 0.3)};
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  m(0, 0) = 1.0;
  const DensityMatrix rho(m, 2, 3);
  double oracle = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double term = 1.0;
    for (const auto& s : sets) term *= s.operators[k](0, 0).real();
    oracle += term;
  }
  EXPECT_NEAR(j_multipartite(rho, sets), oracle, 1e-15);
}

TEST(criteria, multipartite_argument_checks) {
  const auto p = at_fraction(2, 1.0);
  const std::vector<GsicSet> two{p, p};
  EXPECT_THROW(j_multipartite(random_separable(2, 3, 2, 1), two), InvalidArgument);
  const std::vector<GsicSet> mixed{p, at_fraction(3, 1.0)};
  EXPECT_THROW(j_multipartite(max_entangled(2), mixed), InvalidArgument);
  EXPECT_THROW(j_multipartite(DensityMatrix(identity(2) / 2.0, 2, 1), two), InvalidArgument);
}

TEST(criteria, multipartite_bound_values) {
  const std::vector<double> pair{1.0 / 8, 1.0 / 8};
  EXPECT_DOUBLE_EQ(multipartite_bound(2, pair), bipartite_bound(2, 1.0 / 8));
  const std::vector<double> mixed{1.0 / 8, 1.0 / 4};
  EXPECT_NEAR(multipartite_bound(2, mixed), 7.0 / 24, 1e-15);
  const double a = at_fraction(3, 1.0).a;
  for (int n = 2; n <= 6; ++n) {
    const std::vector<double> same(static_cast<std::size_t>(n), a);
    EXPECT_NEAR(multipartite_bound(3, same), bipartite_bound(3, a), 1e-15);
  }
  const std::vector<double> bad{0.5, 0.125};
  EXPECT_THROW(multipartite_bound(2, bad), InvalidArgument);
  EXPECT_THROW(multipartite_bound(2, std::vector<double>{}), InvalidArgument);
}

TEST(criteria, fully_separable_tripartite_states_respect_bound) {
  const std::vector<GsicSet> sets{at_fraction(2, 1.0), conjugate_gsic(at_fraction(2, 1.0)),
                                  at_fraction(2, 0.6)};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = detect_multipartite(random_separable(2, 3, 6, seed), sets);
    ASSERT_FALSE(r.detected()) << "seed=" << seed;
  }
}

TEST(criteria, correlation_matrix_examples) {
  const auto b2 = build_gell_mann_basis(2);
  const auto t0 = correlation_matrix(isotropic(2, 0.0), b2);
  EXPECT_LT(t0.entries.cwiseAbs().maxCoeff(), 1e-16);

  // Phi+ with Pauli/sqrt2: T = diag(<XX>, <YY>, <ZZ>)/2 = diag(1, -1, 1)/2.
  const auto t = correlation_matrix(max_entangled(2), b2);
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected.diagonal() << 0.5, -0.5, 0.5;
  EXPECT_LT((t.entries - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(t.trace(), 0.5, 1e-15);
  EXPECT_THROW(correlation_matrix(max_entangled(3), b2), InvalidArgument);
}

TEST(criteria, correlation_expansion_holds_with_unit_weight) {
  // sum_k P_k (x) P_k = I/d^2 + t^2 d^2 (d+1)^2 sum_j F_j (x) F_j, so the
  // exact weight on Tr(T) is t^2 d^2 (d+1)^2.
  for (int d : {2, 3}) {
    const auto basis = build_gell_mann_basis(d);
    const auto p = construct_gsic(basis, max_feasible_t(basis));
    const double w = p.t * p.t * d * d * (d + 1.0) * (d + 1.0);
    EXPECT_NEAR(correlation_weight_exact(d, p.a), w, 1e-15);
    EXPECT_DOUBLE_EQ(correlation_weight(d, p.a), 2.0 * correlation_weight_exact(d, p.a));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rho = random_density_matrix(d, 2, seed);
      const double tr = correlation_matrix(rho, basis).trace();
      EXPECT_NEAR(j_bipartite(rho, p, p), 1.0 / (d * d) + w * tr, 1e-12);
    }
  }
}

TEST(criteria, correlation_entries_are_real_for_hermitian_state) {
  const auto basis = build_gell_mann_basis(3);
  const auto t = correlation_matrix(random_density_matrix(3, 2, 8), basis);
  EXPECT_EQ(t.entries.rows(), 8);
  EXPECT_TRUE(t.entries.allFinite());
}

TEST(criteria, trace_t_bound_values) {
  EXPECT_DOUBLE_EQ(trace_t_bound(2), 0.25);
  EXPECT_DOUBLE_EQ(trace_t_bound(3), 1.0 / 3);
  double prev = 0.0;
  for (int d = 2; d <= 200; ++d) {
    const double b = trace_t_bound(d);
    EXPECT_GT(b, prev);
    EXPECT_LT(b, 0.5);
    prev = b;
  }
  EXPECT_NEAR(trace_t_bound(1000000), 0.5, 1e-6);
  EXPECT_THROW(trace_t_bound(1), InvalidArgument);
}

TEST(criteria, isotropic_threshold_analytic_solution) {
  // d a x + (1 - x)/d^2 = (a d^2 + 1)/(d(d+1)) solved for x.
  for (int d = 2; d <= 8; ++d)
    for (double a_frac : {0.05, 0.3, 0.999}) {
      const double lo = 1.0 / (d * d * d), hi = 1.0 / (d * d);
      const double a = lo + a_frac * (hi - lo);
      const double x = ((a * d * d + 1.0) / (d * (d + 1.0)) - 1.0 / (d * d)) /
                       (d * a - 1.0 / (d * d));
      EXPECT_NEAR(x, 1.0 / (d + 1), 1e-12);
    }
}

TEST(criteria, isotropic_threshold_scan_finds_inverse_d_plus_one) {
  for (int d = 2; d <= 5; ++d)
    for (double f : {0.5, 1.0}) {
      const auto threshold = isotropic_threshold_scan(d, at_fraction(d, f), 50);
      ASSERT_TRUE(threshold.has_value());
      EXPECT_NEAR(*threshold, 1.0 / (d + 1), 1e-6) << "d=" << d << " f=" << f;
    }
  EXPECT_NEAR(*isotropic_threshold_scan(3, at_fraction(3, 1.0), 11), 0.25, 1e-6);
  EXPECT_FALSE(isotropic_threshold_scan(3, at_fraction(3, 0.0), 20).has_value());
  EXPECT_THROW(isotropic_threshold_scan(3, at_fraction(3, 1.0), 9), InvalidArgument);
}

TEST(criteria, fixed_conjugate_pairing_underestimates_other_bell_states) {
  // With Q = conj(P), (U (x) I)|Phi+> gives
  // 1/d^2 + t^2 d (d+1)^2 (|Tr U|^2 - 1), which is below d a unless U ~ I.
  for (int d : {2, 3}) {
    const auto p = at_fraction(d, 1.0);
    const auto q = conjugate_gsic(p);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) {
        const auto u = weyl_operator(d, s, t);
        const auto v = bell_vector(d, s, t);
        const DensityMatrix rho(v * v.adjoint(), d, 2);
        const double tr_u = std::norm(u.matrix.trace());
        const double expected =
            1.0 / (d * d) + p.t * p.t * d * (d + 1.0) * (d + 1.0) * (tr_u - 1.0);
        EXPECT_NEAR(j_bipartite(rho, p, q), expected, 1e-12);
        if (s != 0 || t != 0) EXPECT_LT(j_bipartite(rho, p, q), d * p.a - 1e-3);
        // The adapted pairing restores d a on every Bell state.
        const auto pair = bell_adapted_pairing(p, u);
        EXPECT_NEAR(j_bipartite(rho, pair.first, pair.second), d * p.a, 1e-12);
      }
  }
}

TEST(criteria, bell_diagonal_lower_bound_with_adapted_pairing) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {2, 3}) {
    const auto p = at_fraction(d, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      RealMatrix w(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w(i, j) = std::pow(u(rng), 4);
      w /= w.sum();
      const auto bell = bell_diagonal(d, w);
      const auto pair = bell_adapted_pairing(p, weyl_operator(d, bell.s_max, bell.t_max));
      EXPECT_GE(j_bipartite(bell.state, pair.first, pair.second), bell.c * d * p.a - 1e-10);
    }
  }
}

TEST(criteria, diagonal_mixture_value_and_lower_bound) {
  for (int d = 2; d <= 4; ++d) {
    const auto p = at_fraction(d, 1.0);
    const auto q = conjugate_gsic(p);
    for (double a1 : {0.1, 0.4, 0.75}) {
      const double a2 = (1 - a1) / (d - 1);
      const double j = j_bipartite(diagonal_mixture_state(d, a1), p, q);
      // a1 d a + (a2/d) sum_k [Tr(P_k)^2 - sum_i P_k(i,i)^2]
      double diag = 0.0;
      for (const auto& op : p.operators) {
        double sq = 0.0;
        for (int i = 0; i < d; ++i) sq += std::pow(op(i, i).real(), 2);
        diag += std::pow(op.trace().real(), 2) - sq;
      }
      EXPECT_NEAR(j, a1 * d * p.a + a2 / d * diag, 1e-12);
      EXPECT_GE(j, a1 * d * p.a - 1e-10);
    }
  }
}

TEST(criteria, sufficient_threshold_dominates_scanned_crossing) {
  for (int d = 2; d <= 4; ++d) {
    const auto p = at_fraction(d, 1.0);
    const auto q = conjugate_gsic(p);
    const double sufficient = dominant_weight_threshold(d, p.a);
    const auto scan = scan_threshold([d](double x) { return diagonal_mixture_state(d, x); },
                                     1e-3, 1 - 1e-3, 40, p, q);
    ASSERT_TRUE(scan.threshold.has_value());
    EXPECT_LE(*scan.threshold, sufficient + 1e-6);
    EXPECT_TRUE(detect_bipartite(diagonal_mixture_state(d, sufficient + 1e-6), p, q).detected());
  }
  // Rank-one measurements: the Bell-diagonal condition becomes c > 2/(d+1).
  EXPECT_NEAR(dominant_weight_threshold(2, 0.25), 2.0 / 3, 1e-15);
}
