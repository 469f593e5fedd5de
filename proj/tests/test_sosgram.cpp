#include <doctest.h>

#include <Eigen/Dense>

#include "ratlyap/sosgram.hpp"
#include "test_util.hpp"

using namespace ratlyap;
using testing::make_rng;
using testing::random_symmetric;
using testing::solve_lyapunov;

namespace {
VectorField minus_identity_field() {
  return family_linear(-Eigen::Matrix2d::Identity());
}
}  // namespace

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(CandidateShape::make(2, 3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(CandidateShape::make(2, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(CandidateShape::make(2, 4, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(CandidateShape::make(2, 4, -1, 1), std::invalid_argument);
  // Even field degree breaks the parity of s + d + 1.
  CHECK_THROWS_AS(CandidateShape::make(2, 4, 1, 2), std::invalid_argument);

  const CandidateShape sh = CandidateShape::make(2, 4, 1, 5);
  CHECK(sh.m_basis.size() == 3);
  CHECK(sh.z_basis.size() == 6);
  CHECK(sh.z_basis.degree == 5);
}

TEST_CASE("derivative-numerator map on the identity") {
  const VectorField f = minus_identity_field();
  const CandidateShape shape = CandidateShape::make(2, 2, 0, 1);
  const LieNumeratorMap lie(f, shape);

  const HomogPoly out = lie.apply(Eigen::Matrix2d::Identity());
  const HomogPoly expected(
      2, 4, {{{4, 0}, 2.0}, {{2, 2}, 4.0}, {{0, 4}, 2.0}});
  CHECK(max_abs_coeff_diff(out, expected) <= 1e-14);
}

TEST_CASE("derivative-numerator map on a diagonal matrix") {
  const VectorField f = minus_identity_field();
  const CandidateShape shape = CandidateShape::make(2, 2, 0, 1);
  const LieNumeratorMap lie(f, shape);

  Eigen::Matrix2d P = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  const HomogPoly out = lie.apply(P);
  // 2 (x^2+y^2)(x^2+2y^2)
  const HomogPoly expected(
      2, 4, {{{4, 0}, 2.0}, {{2, 2}, 6.0}, {{0, 4}, 4.0}});
  CHECK(max_abs_coeff_diff(out, expected) <= 1e-14);

  CHECK(lie.apply(Eigen::Matrix2d::Zero()).is_zero());
}

TEST_CASE("derivative-numerator map rejects bad inputs") {
  const VectorField f = minus_identity_field();
  const CandidateShape shape = CandidateShape::make(2, 2, 0, 1);
  CHECK_THROWS_AS(LieNumeratorMap(family_quintic(0.1), shape),
                  std::invalid_argument);
  const LieNumeratorMap lie(f, shape);
  CHECK_THROWS_AS(lie.apply(Eigen::Matrix3d::Identity()),
                  std::invalid_argument);
}

TEST_CASE("gram polynomial") {
  const auto b = enumerate_monomials(2, 2);
  Eigen::Matrix3d Q = Eigen::Vector3d(2.0, 4.0, 2.0).asDiagonal();
  CHECK(max_abs_coeff_diff(
            gram_poly(Q, b),
            HomogPoly(2, 4, {{{4, 0}, 2.0}, {{2, 2}, 4.0}, {{0, 4}, 2.0}})) ==
        0.0);

  const auto b1 = enumerate_monomials(2, 1);
  CHECK(max_abs_coeff_diff(gram_poly(Eigen::Matrix2d::Identity(), b1),
                           norm_sq(2)) == 0.0);

  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  C(0, 2) = 1.0;
  C(2, 0) = 1.0;
  CHECK(max_abs_coeff_diff(gram_poly(C, b),
                           HomogPoly(2, 4, {{{2, 2}, 2.0}})) == 0.0);

  CHECK_THROWS_AS(gram_poly(Eigen::Matrix2d::Identity(), b),
                  std::invalid_argument);
}

TEST_CASE("assembled system has the predicted shape") {
  {
    const AffineGramSystem sys =
        assemble(minus_identity_field(), CandidateShape::make(2, 2, 0, 1));
    CHECK(sys.rows() == 5);
    CHECK(sys.shape.m_basis.size() == 2);
    CHECK(sys.shape.z_basis.size() == 3);
  }
  {
    const AffineGramSystem sys =
        assemble(family_quintic(0.05), CandidateShape::make(2, 4, 1, 5));
    CHECK(sys.rows() == 11);
    CHECK(sys.shape.z_basis.size() == 6);
  }
}

TEST_CASE("assembly is linear in the numerator Gram matrix") {
  auto rng = make_rng(5);
  const VectorField f = family_quintic(0.7);
  const CandidateShape shape = CandidateShape::make(2, 4, 1, 5);
  const LieNumeratorMap lie(f, shape);
  const Eigen::MatrixXd P1 = random_symmetric(3, rng);
  const Eigen::MatrixXd P2 = random_symmetric(3, rng);
  const HomogPoly sum = lie.apply(P1 + P2);
  const HomogPoly parts = lie.apply(P1) + lie.apply(P2);
  CHECK(max_abs_coeff_diff(sum, parts) <= 1e-12 * parts.max_abs_coeff());
}

TEST_CASE("gram matrices round-trip through coefficient extraction") {
  auto rng = make_rng(9);
  const auto basis = enumerate_monomials(2, 3);
  const int k = basis.size();
  const Eigen::MatrixXd Q = random_symmetric(k, rng);
  const HomogPoly target = gram_poly(Q, basis);

  // Re-solve the coefficient-matching system for some Gram representation.
  const auto row_basis = enumerate_monomials(2, 6);
  const int pairs = k * (k + 1) / 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(row_basis.size(), pairs);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(row_basis.size());
  int col = 0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      const int row = row_basis.index_of(basis[i].times(basis[j]));
      A(row, col) = (i == j) ? 1.0 : 2.0;
      ++col;
    }
  }
  for (const auto& [mono, c] : target.terms()) {
    b(row_basis.index_of(mono)) = c;
  }
  const Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
  Eigen::MatrixXd Q2(k, k);
  col = 0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      Q2(i, j) = sol(col);
      Q2(j, i) = sol(col);
      ++col;
    }
  }
  // Gram matrices are non-unique; only the polynomial must match.
  CHECK(max_abs_coeff_diff(gram_poly(Q2, basis), target) <=
        1e-10 * std::max(1.0, target.max_abs_coeff()));
}

TEST_CASE("scaling the field scales the derivative map") {
  auto rng = make_rng(13);
  const double c = 3.5;
  const VectorField f = family_quintic(1.1);
  std::vector<std::vector<HomogPoly>> scaled;
  for (const auto& parts : f.components()) {
    scaled.push_back({parts[0] * c});
  }
  const VectorField fc(2, std::move(scaled), 5);

  const CandidateShape shape = CandidateShape::make(2, 4, 1, 5);
  const LieNumeratorMap lie_f(f, shape);
  const LieNumeratorMap lie_fc(fc, shape);
  const Eigen::MatrixXd P = random_symmetric(3, rng);
  const HomogPoly a = lie_fc.apply(P);
  const HomogPoly b = lie_f.apply(P) * c;
  CHECK(max_abs_coeff_diff(a, b) <= 1e-12 * b.max_abs_coeff());
}

TEST_CASE("linear field reproduces the Lyapunov equation") {
  auto rng = make_rng(21);
  const Eigen::MatrixXd A = testing::random_hurwitz(2, rng);
  const Eigen::MatrixXd P =
      solve_lyapunov(A, 2.0 * Eigen::Matrix2d::Identity());
  // P solves A'P + PA = -2I, so the derivative numerator is 2 ||x||^4.
  const VectorField f = family_linear(A);
  const LieNumeratorMap lie(f, CandidateShape::make(2, 2, 0, 1));
  const HomogPoly expected(
      2, 4, {{{4, 0}, 2.0}, {{2, 2}, 4.0}, {{0, 4}, 2.0}});
  CHECK(max_abs_coeff_diff(lie.apply(P), expected) <= 1e-10);
}
