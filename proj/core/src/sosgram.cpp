#include "ratlyap/sosgram.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ratlyap {

namespace {
int pair_index(int i, int j) {
  // Packed upper triangle, column-major: (0,0), (0,1), (1,1), (0,2), ...
  return j * (j + 1) / 2 + i;
}
}  // namespace

CandidateShape CandidateShape::make(int n, int s, int r, int d) {
  if (n < 1) throw std::invalid_argument("shape: dimension must be >= 1");
  if (s <= 0 || s % 2 != 0) {
    throw std::invalid_argument("shape: s must be a positive even integer");
  }
  if (r < 0 || 2 * r >= s) {
    throw std::invalid_argument("shape: r must satisfy 0 <= 2r < s");
  }
  if (d < 1) throw std::invalid_argument("shape: field degree must be >= 1");
  if ((s + d + 1) % 2 != 0) {
    throw std::invalid_argument(
        "shape: s + d + 1 must be even (field degree must be odd)");
  }
  CandidateShape shape;
  shape.n = n;
  shape.s = s;
  shape.r = r;
  shape.d = d;
  shape.m_basis = enumerate_monomials(n, s / 2);
  shape.z_basis = enumerate_monomials(n, (s + d + 1) / 2);
  return shape;
}

LieNumeratorMap::LieNumeratorMap(const VectorField& f,
                                 const CandidateShape& shape)
    : shape_(shape) {
  if (f.dimension() != shape.n) {
    throw std::invalid_argument("vector field dimension does not match shape");
  }
  const std::vector<HomogPoly> fh = f.homogeneous_components(shape.d);
  const MonomialBasis& mb = shape.m_basis;
  const int k = mb.size();
  const int n = shape.n;

  const HomogPoly nsq = norm_sq(n);
  const auto jac = jacobian(mb);  // k x n, entry (a, j) = d m_a / d x_j

  // <grad m_a, f> for each basis monomial, straight from the Jacobian rows.
  std::vector<HomogPoly> grad_dot_f;
  grad_dot_f.reserve(static_cast<size_t>(k));
  for (int a = 0; a < k; ++a) {
    grad_dot_f.push_back(dot(jac[static_cast<size_t>(a)], fh));
  }

  // <x, f>
  std::vector<HomogPoly> xs;
  xs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) xs.push_back(HomogPoly::variable(n, i));
  const HomogPoly x_dot_f = dot(xs, fh);

  images_.reserve(static_cast<size_t>(k * (k + 1) / 2));
  for (int j = 0; j < k; ++j) {
    const HomogPoly mj = HomogPoly::monomial(n, mb[j]);
    for (int i = 0; i <= j; ++i) {
      const HomogPoly mi = HomogPoly::monomial(n, mb[i]);
      HomogPoly first(n, shape.s + shape.d + 1);
      if (i == j) {
        first = mi * grad_dot_f[static_cast<size_t>(i)];
      } else {
        first = mj * grad_dot_f[static_cast<size_t>(i)] +
                mi * grad_dot_f[static_cast<size_t>(j)];
      }
      HomogPoly image = nsq * first * -2.0;
      if (shape.r > 0) {
        const double sym = (i == j) ? 1.0 : 2.0;
        image += (mi * mj * x_dot_f) * (2.0 * shape.r * sym);
      }
      images_.push_back(std::move(image));
    }
  }
}

const HomogPoly& LieNumeratorMap::unit_image(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= shape_.m_basis.size()) {
    throw std::invalid_argument("unit_image index out of range");
  }
  return images_[static_cast<size_t>(pair_index(i, j))];
}

HomogPoly LieNumeratorMap::apply(const Eigen::MatrixXd& P) const {
  const int k = shape_.m_basis.size();
  if (P.rows() != k || P.cols() != k) {
    throw std::invalid_argument("matrix size does not match m-basis");
  }
  HomogPoly out(shape_.n, shape_.s + shape_.d + 1);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v = P(i, j);
      if (v == 0.0) continue;
      out += unit_image(i, j) * v;
    }
  }
  return out;
}

HomogPoly gram_poly(const Eigen::MatrixXd& Q, const MonomialBasis& basis) {
  const int k = basis.size();
  if (Q.rows() != k || Q.cols() != k) {
    throw std::invalid_argument("matrix size does not match basis");
  }
  HomogPoly out(basis.n, 2 * basis.degree);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v = Q(i, j);
      if (v == 0.0) continue;
      const double sym = (i == j) ? 1.0 : 2.0;
      out.add_term(basis[i].times(basis[j]), sym * v);
    }
  }
  return out;
}

AffineGramSystem assemble(const VectorField& f, const CandidateShape& shape) {
  AffineGramSystem sys;
  sys.shape = shape;
  sys.row_basis = enumerate_monomials(shape.n, shape.s + shape.d + 1);

  // Q side: coefficient of z_i * z_j lands in exactly one row.
  const MonomialBasis& zb = shape.z_basis;
  for (int j = 0; j < zb.size(); ++j) {
    for (int i = 0; i <= j; ++i) {
      const Monomial prod = zb[i].times(zb[j]);
      const int row = sys.row_basis.index_of(prod);
      if (row < 0) throw std::logic_error("gram product missing from row basis");
      sys.triplets.push_back(
          {row, GramBlock::Q, i, j, (i == j) ? 1.0 : 2.0});
    }
  }

  // P side: negated coefficients of the derivative-numerator unit images.
  const LieNumeratorMap lie(f, shape);
  const int k = shape.m_basis.size();
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      for (const auto& [mono, c] : lie.unit_image(i, j).terms()) {
        const int row = sys.row_basis.index_of(mono);
        if (row < 0) {
          throw std::logic_error("derivative term missing from row basis");
        }
        sys.triplets.push_back({row, GramBlock::P, i, j, -c});
      }
    }
  }

  std::sort(sys.triplets.begin(), sys.triplets.end(),
            [](const GramTriplet& a, const GramTriplet& b) {
              return std::tie(a.row, a.block, a.i, a.j) <
                     std::tie(b.row, b.block, b.i, b.j);
            });
  return sys;
}

}  // namespace ratlyap
