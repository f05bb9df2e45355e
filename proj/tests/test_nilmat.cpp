#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nilcurv/nilmat.hpp"

using namespace nilcurv;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }
Composition R(std::vector<int> v) { return Composition(std::move(v)); }

std::vector<Partition> nondegenerate(int n) {
  std::vector<Partition> out;
  for (auto& p : partitions_of(n)) {
    if (!p.is_degenerate()) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(StandardNilpotent, Examples) {
  const ComplexMatrix x2 = standard_nilpotent(P({2}));
  ASSERT_EQ(x2.rows(), 2);
  EXPECT_EQ(x2(1, 0), Complex(1.0, 0.0));
  EXPECT_EQ(norm_sq(x2), 1.0);

  const ComplexMatrix x3 = standard_nilpotent(P({3}));
  EXPECT_NEAR(x3(1, 0).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(x3(2, 1).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(norm_sq(x3), 4.0, 1e-14);
  const ComplexMatrix h = commutator(x3.adjoint(), x3);
  EXPECT_NEAR(h(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(h(1, 1).real(), 0.0, 1e-14);
  EXPECT_NEAR(h(2, 2).real(), -2.0, 1e-14);
  EXPECT_NEAR((h - h.diagonal().asDiagonal().toDenseMatrix()).norm(), 0.0, 1e-14);

  EXPECT_EQ(standard_nilpotent(P({1, 1, 1})).norm(), 0.0);
  EXPECT_THROW(standard_nilpotent(Partition()), domain_error);
}

TEST(StandardNilpotent, WeightsSymmetric) {
  for (int i = 2; i <= 15; ++i) {
    const auto w = jordan_block_weights(i);
    ASSERT_EQ(w.size(), static_cast<std::size_t>(i - 1));
    for (std::size_t p = 0; p < w.size(); ++p) {
      EXPECT_GT(w[p], 0.0);
      EXPECT_DOUBLE_EQ(w[p], w[w.size() - 1 - p]);
    }
  }
}

TEST(KValue, MatchesConstantAtStandardNilpotents) {
  for (int n = 2; n <= 9; ++n) {
    for (const auto& p : nondegenerate(n)) {
      const double c = c_constant(p).to_double();
      EXPECT_NEAR(k_value(standard_nilpotent(p)), c, 1e-12 * c) << p.to_string();
    }
  }
}

TEST(KValue, ZeroMatrixAndShape) {
  EXPECT_THROW(k_value(ComplexMatrix::Zero(3, 3)), domain_error);
  EXPECT_THROW(k_value(ComplexMatrix::Ones(2, 3)), domain_error);
  EXPECT_THROW(moment(ComplexMatrix::Zero(2, 2)), domain_error);
}

TEST(KValue, ScaleAndUnitaryInvariance) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = stream_for(21, i);
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    const ComplexMatrix a = random_gaussian(n, n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const double k = k_value(a);
    EXPECT_NEAR(k_value(u * a * u.adjoint()), k, 1e-12 * k);
    EXPECT_NEAR(k_value(Complex(-3.0, 0.5) * a), k, 1e-12 * k);
  }
}

TEST(Moment, TracelessHermitianWithSquareNormK) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = stream_for(22, i);
    const ComplexMatrix a = random_gaussian(5, 5, rng);
    const ComplexMatrix m = moment(a);
    EXPECT_NEAR((m - m.adjoint()).norm(), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(m.trace()), 0.0, 1e-13);
    EXPECT_NEAR(norm_sq(m), k_value(a), 1e-12);
  }
  // m(X^(3)) = [X, X^*] / |X|^2 = diag(-2, 0, 2) / 4.
  const ComplexMatrix m3 = moment(standard_nilpotent(P({3})));
  EXPECT_NEAR(m3(0, 0).real(), -0.5, 1e-15);
  EXPECT_NEAR(m3(2, 2).real(), 0.5, 1e-15);
}

TEST(Moment, DerivativeIdentity) {
  // (m(xi), eta) = 1 / (2 |xi|^2) d/dt |exp(t eta) xi exp(-t eta)|^2 at 0.
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = stream_for(23, i);
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    const ComplexMatrix xi = random_gaussian(n, n, rng);
    const ComplexMatrix eta = random_gaussian(n, n, rng);
    const double lhs = trace_inner(moment(xi), eta).real();
    const double h = 1e-5;
    const double d = (norm_sq(adjoint_flow(xi, eta, h)) - norm_sq(adjoint_flow(xi, eta, -h))) / (2.0 * h);
    const double rhs = d / (2.0 * norm_sq(xi));
    EXPECT_NEAR(lhs, rhs, 1e-6 * std::abs(lhs)) << i;
  }
}

TEST(JordanType, StandardAndConjugated) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& p : partitions_of(n)) {
      EXPECT_EQ(jordan_type(standard_nilpotent(p)), p);
      Rng rng = stream_for(static_cast<std::uint64_t>(n), p.length());
      EXPECT_EQ(jordan_type(conjugate_by(random_conjugator(n, rng), standard_nilpotent(p))), p) << p.to_string();
    }
  }
}

TEST(JordanType, ZeroAndNonNilpotent) {
  EXPECT_EQ(jordan_type(ComplexMatrix::Zero(4, 4)), P({1, 1, 1, 1}));
  EXPECT_THROW(jordan_type(ComplexMatrix::Identity(3, 3)), not_nilpotent_error);
  ComplexMatrix a = standard_nilpotent(P({3}));
  a(0, 2) = 0.5;
  EXPECT_THROW(jordan_type(a), not_nilpotent_error);
  EXPECT_THROW(jordan_type(ComplexMatrix::Zero(2, 3)), domain_error);
}

TEST(JordanType, ToleranceOverride) {
  ComplexMatrix a = standard_nilpotent(P({2, 2}));
  a(0, 1) = 1e-3;
  EXPECT_THROW(jordan_type(a), not_nilpotent_error);
  EXPECT_EQ(jordan_type(a, 1e-2), P({2, 2}));
}

TEST(Rigidity, StandardNilpotentsAreCritical) {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& p : nondegenerate(n)) {
      const RigidityResult r = rigidity_residual(standard_nilpotent(p));
      EXPECT_NEAR(r.a_est, -2.0, 1e-12);
      EXPECT_LT(r.residual, 1e-12);
    }
  }
}

TEST(Rigidity, ScalesWithModulusSquared) {
  const Complex c(1.5, -0.5);
  const RigidityResult r = rigidity_residual(c * standard_nilpotent(P({4, 2})));
  EXPECT_NEAR(r.a_est, -2.0 * std::norm(c), 1e-12);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Rigidity, GenericMatrixIsNotCritical) {
  Rng rng = stream_for(31, 0);
  for (int i = 0; i < 20; ++i) EXPECT_GT(rigidity_residual(random_gaussian(4, 4, rng)).residual, 1e-3);
  EXPECT_THROW(rigidity_residual(ComplexMatrix::Zero(2, 2)), domain_error);
}

TEST(Sl2, Triples) {
  for (int n = 2; n <= 12; ++n) EXPECT_LT(sl2_check(P({n})), 1e-12) << n;
  EXPECT_LT(sl2_check(P({2, 2})), 1e-12);
  EXPECT_LT(sl2_check(P({5, 3, 1})), 1e-12);
  EXPECT_THROW(sl2_check(P({1, 1, 1})), degenerate_error);
}

TEST(TypeR, RandomBuilder) {
  const ComplexMatrix a = random_type_R(R({1, 1}), 5);
  ASSERT_EQ(a.rows(), 2);
  EXPECT_NE(a(1, 0), Complex(0.0, 0.0));
  EXPECT_EQ(a(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ(a(0, 1), Complex(0.0, 0.0));
  EXPECT_EQ(a(1, 1), Complex(0.0, 0.0));
  EXPECT_EQ(jordan_type(a), P({2}));

  const Composition r = R({2, 3, 0, 1, 2});
  const ComplexMatrix b = random_type_R(r, 9);
  EXPECT_TRUE(is_type_R(b, r));
  EXPECT_FALSE(is_type_R(b.adjoint(), r));
  EXPECT_EQ(random_type_R(r, 9), b);
  EXPECT_NE(random_type_R(r, 10), b);

  EXPECT_THROW(random_type_R(R({3}), 0), degenerate_error);
  EXPECT_THROW(random_type_R(R({0, 2, 0}), 0), degenerate_error);
  EXPECT_THROW(random_type_R(R({1, 0, 1}), 0), degenerate_error);
}

TEST(TypeR, GenericJordanTypeAndInequality) {
  // Full-rank blocks attain the generic type R^t; K stays above C_{R^t}.
  Rng rng = stream_for(41, 0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    std::vector<int> e(std::uniform_int_distribution<std::size_t>(2, 5)(rng));
    for (int& x : e) x = std::uniform_int_distribution<int>(0, 3)(rng);
    int total = 0;
    for (int x : e) total += x;
    if (total == 0) continue;
    const Composition r(e);
    if (conjugate_composition(r).is_degenerate()) continue;
    const ComplexMatrix a = random_type_R(r, i);
    const Partition rt = conjugate_composition(r);
    EXPECT_TRUE(dominated_or_equal(jordan_type(a), rt)) << r.to_string();
    EXPECT_GE(k_value(a), c_constant(rt).to_double() - 1e-9) << r.to_string();
  }
}

TEST(TypeR, OneTwoOneHasTypeThreeOne) {
  const ComplexMatrix a = random_type_R(R({1, 2, 1}), 3);
  EXPECT_EQ(jordan_type(a), P({3, 1}));
}

TEST(Chains, LengthsAreConjugate) {
  for (int n = 1; n <= 9; ++n) {
    for (const auto& r : compositions_of(n)) {
      std::vector<int> lengths;
      for (const Chain& c : chain_assignment(r)) lengths.push_back(c.length());
      EXPECT_EQ(Partition::from_multiset(lengths), conjugate_composition(r)) << r.to_string();
    }
  }
}

TEST(Chains, NonzeroWeightsGiveConjugateJordanType) {
  // A chain-supported matrix with any nonzero weights has type R^t.
  Rng rng = stream_for(43, 0);
  for (int n = 2; n <= 8; ++n) {
    for (const auto& r : compositions_of(n)) {
      if (conjugate_composition(r).is_degenerate()) continue;
      std::uniform_real_distribution<double> mag(0.3, 3.0);
      const ComplexMatrix a = type_R_from_chains(r, chain_assignment(r), [&](const Chain&, int) {
        return std::polar(mag(rng), mag(rng));
      });
      EXPECT_TRUE(is_type_R(a, r));
      EXPECT_EQ(jordan_type(a), conjugate_composition(r)) << r.to_string();
    }
  }
}

TEST(Extremal, AttainsConjugateConstant) {
  const ComplexMatrix a = extremal_type_R(R({1, 4, 4, 1}));
  EXPECT_NEAR(k_value(a), 2.0 / 13.0, 1e-13);
  for (int n = 2; n <= 9; ++n) {
    for (const auto& r : compositions_of(n)) {
      const Partition rt = conjugate_composition(r);
      if (rt.is_degenerate()) continue;
      const ComplexMatrix e = extremal_type_R(r);
      EXPECT_TRUE(is_type_R(e, r));
      EXPECT_EQ(jordan_type(e), rt);
      EXPECT_NEAR(k_value(e), c_constant(rt).to_double(), 1e-12) << r.to_string();
      EXPECT_LT(rigidity_residual(e).residual, 1e-12);
    }
  }
}

TEST(Extremal, PartitionInputIsPermutedStandardNilpotent) {
  // Same singular values as X^{p^t} and the same K.
  for (const auto& p : {P({3, 2, 2}), P({4, 1}), P({2, 2, 2, 1})}) {
    const ComplexMatrix e = extremal_type_R(Composition(p));
    const ComplexMatrix x = standard_nilpotent(conjugate_partition(p));
    EXPECT_NEAR((singular_values(e) - singular_values(x)).norm(), 0.0, 1e-13);
    EXPECT_NEAR(k_value(e), k_value(x), 1e-13);
  }
}

TEST(Extremal, SymmetricWeights) {
  EXPECT_EQ(extremal_symmetry_defect(R({1, 4, 4, 1})), 0.0);
  EXPECT_EQ(extremal_symmetry_defect(R({2, 1, 3, 1, 2})), 0.0);
  EXPECT_GT(extremal_symmetry_defect(R({1, 2, 2})), 0.5);
  const auto w = extremal_weights(R({1, 2, 1}));
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NEAR(w[0][0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(w[1][0], std::sqrt(2.0), 1e-15);
  EXPECT_EQ(w[0][1], 0.0);
  EXPECT_THROW(extremal_type_R(R({1, 0, 1})), degenerate_error);
}
