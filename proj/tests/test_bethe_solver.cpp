#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gaudin/bethe.hpp"
#include "gaudin/eigenbasis.hpp"
#include "gaudin/errors.hpp"
#include "gaudin/numeric.hpp"
#include "gaudin/operators.hpp"
#include "gaudin/singular.hpp"
#include "oracle.hpp"

using namespace gaudin;

namespace {

const Complex I(0.0, 1.0);

BetheModel model_11() { return BetheModel({1, 1}, {0.0, 1.0}); }

// Sine of the angle between a and the line through b.
double angle_to(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const Eigen::VectorXcd u = b.normalized();
  return (a - u * u.dot(a)).norm() / a.norm();
}

Eigen::VectorXcd to_eigen(const ExactVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
  return out;
}

std::vector<std::vector<Complex>> tuples(const std::vector<EigenVector>& vs) {
  std::vector<std::vector<Complex>> out;
  for (const auto& v : vs) out.push_back(v.eigenvalues);
  return out;
}

std::vector<std::vector<Complex>> tuples(const BetheReport& r) {
  std::vector<std::vector<Complex>> out;
  for (const auto& s : r.solutions) out.push_back(s.eigenvalues);
  return out;
}

}  // namespace

TEST(BetheModel, Validation) {
  EXPECT_THROW(BetheModel({1}, {0.0}), DomainError);
  EXPECT_THROW(BetheModel({1, 1}, {0.0, 0.0}), DomainError);
  EXPECT_THROW(BetheModel({1, -1}, {0.0, 1.0}), DomainError);
  const auto m = BetheModel::from_spec(ModelSpec({2, 1}, {Rational(1, 2), Rational(-3)}));
  EXPECT_DOUBLE_EQ(m.z()[0].real(), 0.5);
  EXPECT_DOUBLE_EQ(m.spread(), 3.5);
}

TEST(LoweringFieldComplex, VacuumExample) {
  const auto f = lowering_field(model_11(), Complex(0.5), 0);
  // Rows (0,1), (1,0): 2F^(1)v_0 - 2F^(2)v_0.
  EXPECT_NEAR(std::abs(f.at(0, 0) - Complex(-2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.at(1, 0) - Complex(2.0)), 0.0, 1e-15);
  EXPECT_THROW(lowering_field(model_11(), Complex(1.0), 0), DomainError);
}

TEST(LoweringFieldComplex, AgreesWithExactField) {
  const ModelSpec spec({2, 1, 3}, {Rational(0), Rational(2), Rational(-1, 3)});
  const auto model = BetheModel::from_spec(spec);
  const Rational w(7, 5);
  for (int m = 0; m < spec.total_weight(); ++m) {
    const auto exact = to_complex(lowering_field(spec, w, m));
    const auto approx = lowering_field(model, Complex(1.4), m);
    EXPECT_LT((to_dense_complex(exact) - to_dense_complex(approx)).norm(), 1e-13);
  }
}

TEST(BetheVector, EmptyProductAndPermutationInvariance) {
  const BetheModel model({2, 1, 2}, {0.0, 1.0, -2.0});
  const auto v0 = bethe_vector(model, {});
  ASSERT_EQ(v0.size(), 1);
  EXPECT_EQ(v0(0), Complex(1.0));
  const std::vector<Complex> a{Complex(0.3, 0.2), Complex(1.7, -0.4)};
  const std::vector<Complex> b{a[1], a[0]};
  EXPECT_LT((bethe_vector(model, a) - bethe_vector(model, b)).norm(), 1e-13);
  EXPECT_THROW(bethe_vector(model, std::vector<Complex>{Complex(0.5), Complex(0.5)}), DomainError);
  EXPECT_THROW(bethe_vector(model, std::vector<Complex>{Complex(1.0)}), DomainError);
}

TEST(BetheResidual, TwoSiteRoot) {
  const auto f = bethe_residual(model_11(), std::vector<Complex>{Complex(0.5)});
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], Complex(0.0));
  // f_1 → 0 as w → ∞, so a small residual alone does not identify a root.
  EXPECT_LT(std::abs(bethe_residual(model_11(), std::vector<Complex>{Complex(1e9)})[0]), 1e-8);
}

TEST(BethePolynomial, CoefficientsForTwoAndThreeSites) {
  const auto p2 = bethe_polynomial(model_11());  // 2w - 1
  ASSERT_EQ(p2.size(), 2u);
  EXPECT_EQ(p2[0], Complex(-1.0));
  EXPECT_EQ(p2[1], Complex(2.0));
  // Σ λ_k Π_{j≠k}(w - z_j) for λ=(1,2,3), z=(0,1,c): 6w² - (4+3c)w + c.
  const Complex c(0.0, 4.0 / 3.0);
  const auto p3 = bethe_polynomial(BetheModel({1, 2, 3}, {0.0, 1.0, c}));
  ASSERT_EQ(p3.size(), 3u);
  EXPECT_LT(std::abs(p3[2] - 6.0), 1e-14);
  EXPECT_LT(std::abs(p3[1] + (4.0 + 3.0 * c)), 1e-14);
  EXPECT_LT(std::abs(p3[0] - c), 1e-14);
}

TEST(SolveBethe, TwoSiteClosedForm) {
  const auto report = solve_bethe(model_11(), 1);
  EXPECT_EQ(report.expected_count, 1u);
  ASSERT_EQ(report.found(), 1u);
  const auto& s = report.solutions[0];
  EXPECT_NEAR(std::abs(s.roots[0] - Complex(0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvalues[0] - Complex(1.5)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.eigenvalues[1] - Complex(-1.5)), 0.0, 1e-12);
  EXPECT_FALSE(s.multiplicity_flag);
  const ModelSpec spec({1, 1}, {Rational(0), Rational(1)});
  const auto kernel = singular_basis_kernel(spec, 1);
  EXPECT_LT(angle_to(bethe_vector(model_11(), s.roots), to_eigen(kernel.vectors[0].coords)), 1e-9);
  const auto check = verify_solution(model_11(), s.roots, 1e-9);
  EXPECT_TRUE(check.pass());
  EXPECT_LT(check.singular_residual, 1e-14);
}

TEST(SolveBethe, ThreeSitesGenericGivesTwoRoots) {
  const BetheModel model({2, 1, 3}, {0.0, 1.0, 2.5});
  const auto report = solve_bethe(model, 1);
  ASSERT_EQ(report.found(), 2u);
  EXPECT_GT(std::abs(report.solutions[0].roots[0] - report.solutions[1].roots[0]), 1e-3);
  for (const auto& s : report.solutions) {
    EXPECT_FALSE(s.multiplicity_flag);
    EXPECT_LE(s.residual_eq, 1e-11);
    EXPECT_LE(s.singular_residual, 1e-10);
    EXPECT_LE(s.vector_residual, 1e-10);
  }
}

TEST(SolveBethe, DoubleRootIsFlagged) {
  // 6w² - (4+4i)w + 4i/3 has zero discriminant: w = (1+i)/3 twice.
  const BetheModel model({1, 2, 3}, {0.0, 1.0, Complex(0.0, 4.0 / 3.0)});
  const auto report = solve_bethe(model, 1);
  EXPECT_EQ(report.expected_count, 2u);
  ASSERT_EQ(report.found(), 1u);
  const auto& s = report.solutions[0];
  EXPECT_TRUE(s.multiplicity_flag);
  EXPECT_LT(std::abs(s.roots[0] - Complex(1.0, 1.0) / 3.0), 1e-6);
}

TEST(SolveBethe, NonRootIsRejectedByVerification) {
  const BetheModel model({2, 1, 3}, {0.0, 1.0, 2.5});
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 4.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<Complex> w{Complex(u(rng), u(rng))};
    const auto check = verify_solution(model, w, 1e-9);
    EXPECT_FALSE(check.pass());
    EXPECT_GT(check.singular_residual, 1e-3);
    EXPECT_GT(check.vector_residual, 1e-3);
  }
}

TEST(SolveBethe, SingularResidualIsLinearInEquationResidual) {
  const BetheModel model({2, 2, 1}, {0.0, 1.0, 3.0});
  const auto report = solve_bethe(model, 2);
  ASSERT_GE(report.found(), 1u);
  const auto root = report.solutions[0].roots;
  std::vector<double> ratios;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    auto w = root;
    w[0] += Complex(eps, 0.5 * eps);
    double fmax = 0;
    for (const auto& f : bethe_residual(model, w)) fmax = std::max(fmax, std::abs(f));
    ratios.push_back(verify_solution(model, w, 1e-9).singular_residual / fmax);
  }
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.05);
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 0.05);
}

TEST(SolveBethe, TwoSitesTwoRootsMatchDiagonalization) {
  const ModelSpec spec({2, 2}, {Rational(0), Rational(1)});
  const auto model = BetheModel::from_spec(spec);
  const auto report = solve_bethe(model, 2);
  EXPECT_EQ(report.expected_count, 1u);
  ASSERT_EQ(report.found(), 1u);
  const auto& s = report.solutions[0];
  EXPECT_LE(s.singular_residual, 1e-9);
  EXPECT_LE(s.vector_residual, 1e-9);
  const auto vs = diagonalize_singular(spec, 2);
  EXPECT_LT(multiset_tuple_distance(tuples(report), tuples(vs)), 1e-8);
}

TEST(SolveBethe, CrossValidationOnThreeSites) {
  const ModelSpec spec({2, 2, 2}, {Rational(0), Rational(1), Rational(3, 2)});
  const auto model = BetheModel::from_spec(spec);
  for (int m = 1; m <= 2; ++m) {
    const auto report = solve_bethe(model, m);
    ASSERT_EQ(report.found(), report.expected_count) << "m=" << m;
    const auto vs = diagonalize_singular(spec, m);
    const auto cc = cross_validate(spec, report, vs);
    EXPECT_TRUE(cc.applicable);
    EXPECT_LT(cc.eigenvalue_deviation, 1e-8);
    EXPECT_LT(cc.span_deviation, 1e-8);
    EXPECT_GT(cc.min_singular_value, 1e-8);
  }
}

TEST(SolveBethe, RootsAreCanonicalAndBounded) {
  const BetheModel model({1, 2, 1, 2}, {0.0, 1.0, -1.5, 2.0});
  const auto report = solve_bethe(model, 2);
  for (const auto& s : report.solutions) {
    ASSERT_EQ(s.roots.size(), 2u);
    const bool ordered = s.roots[0].real() < s.roots[1].real() ||
                         (std::abs(s.roots[0].real() - s.roots[1].real()) < 1e-9 &&
                          s.roots[0].imag() <= s.roots[1].imag());
    EXPECT_TRUE(ordered);
    for (const auto& w : s.roots) EXPECT_LT(std::abs(w - model.centroid()), 20 * model.spread());
  }
}

TEST(SolveBethe, DeterministicForFixedSeed) {
  const BetheModel model({2, 1, 2}, {0.0, 1.0, 2.5});
  BetheOptions opts;
  opts.seed = 12345;
  const auto a = solve_bethe(model, 2, opts);
  const auto b = solve_bethe(model, 2, opts);
  ASSERT_EQ(a.found(), b.found());
  for (std::size_t j = 0; j < a.found(); ++j) EXPECT_EQ(a.solutions[j].roots, b.solutions[j].roots);
}

TEST(SolveBethe, ComplexSitesEigenvaluesFollowFormula) {
  const BetheModel model({1, 2, 1}, {Complex(0, 0), Complex(1, 0.5), Complex(-1, 1)});
  const auto report = solve_bethe(model, 1);
  EXPECT_EQ(report.found(), 2u);
  for (const auto& s : report.solutions) {
    const auto vac_plus = bethe_eigenvalues(model, s.roots);
    for (std::size_t i = 0; i < vac_plus.size(); ++i) EXPECT_LT(std::abs(vac_plus[i] - s.eigenvalues[i]), 1e-12);
    EXPECT_LE(s.singular_residual, 1e-9);
    EXPECT_LE(s.vector_residual, 1e-9);
  }
}

TEST(MultisetDistance, MatchesPermutedTuples) {
  const std::vector<std::vector<Complex>> a{{1.0, 2.0}, {3.0, 4.0}};
  const std::vector<std::vector<Complex>> b{{3.0, 4.0 + 1e-10}, {1.0, 2.0}};
  EXPECT_LT(multiset_tuple_distance(a, b), 2e-10);
  EXPECT_TRUE(std::isinf(multiset_tuple_distance(a, {{1.0, 2.0}})));
}
