#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ratlyap/dynamics.hpp"
#include "ratlyap/poly.hpp"

namespace ratlyap {

// One hierarchy level: numerator degree s (even, s > 2r) over denominator
// (x1^2+...+xn^2)^r for a field of odd degree d. m_basis spans numerator
// square roots (degree s/2), z_basis the derivative-side square roots
// (degree (s+d+1)/2).
struct CandidateShape {
  int n = 0;
  int s = 0;
  int r = 0;
  int d = 0;
  MonomialBasis m_basis;
  MonomialBasis z_basis;

  static CandidateShape make(int n, int s, int r, int d);
};

enum class GramBlock { P, Q };

// One coefficient of one equality row: value * X[i][j] with X symmetric and
// i <= j; off-diagonal values already carry the factor 2 of the symmetric
// inner product.
struct GramTriplet {
  int row = 0;
  GramBlock block = GramBlock::P;
  int i = 0;
  int j = 0;
  double value = 0.0;
};

// Coefficientwise form of the Gram identity: one zero-RHS equality row per
// monomial of degree s+d+1, in grlex order. Row semantics:
//   sum of Q-triplets - sum of P-triplets = 0, i.e.
//   coeff(z' Q z) - coeff(derivative numerator of P) = 0.
struct AffineGramSystem {
  CandidateShape shape;
  MonomialBasis row_basis;
  std::vector<GramTriplet> triplets;  // sorted by (row, block, i, j)

  int rows() const { return row_basis.size(); }
};

// The linear map P -> numerator polynomial of the negated derivative:
//   -2 ||x||^2 <J(m)' P m, f> + 2 r (m' P m) <x, f>,
// realized through the precomputed images of the symmetric unit matrices.
class LieNumeratorMap {
 public:
  LieNumeratorMap(const VectorField& f, const CandidateShape& shape);

  const CandidateShape& shape() const { return shape_; }
  // Image of the symmetric unit matrix with ones at (i, j) and (j, i), i <= j.
  const HomogPoly& unit_image(int i, int j) const;
  // Image of a full symmetric matrix, by linearity.
  HomogPoly apply(const Eigen::MatrixXd& P) const;

 private:
  CandidateShape shape_;
  std::vector<HomogPoly> images_;  // packed upper triangle, column-major
};

// m(x)' Q m(x) as a polynomial of degree 2 * basis.degree. Linear in Q.
HomogPoly gram_poly(const Eigen::MatrixXd& Q, const MonomialBasis& basis);

// The full equality system of one hierarchy level.
AffineGramSystem assemble(const VectorField& f, const CandidateShape& shape);

}  // namespace ratlyap
