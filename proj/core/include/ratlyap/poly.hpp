#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratlyap/monomial.hpp"

namespace ratlyap {

// Sparse homogeneous polynomial with double coefficients.
//
// Every stored term has exactly the declared degree (checked on construction
// and preserved by every operation) and no stored coefficient is exactly
// zero, so equal polynomials have identical term maps. Instances are meant to
// be immutable once built; arithmetic returns new values.
class HomogPoly {
 public:
  using TermMap = std::map<Monomial, double, GrlexLess>;

  HomogPoly() = default;
  HomogPoly(int n, int degree);  // the zero polynomial
  HomogPoly(int n, int degree,
            std::initializer_list<std::pair<std::vector<int>, double>> terms);

  static HomogPoly constant(int n, double c);
  // x_{i+1} as a degree-1 polynomial (i is 0-based).
  static HomogPoly variable(int n, int i);
  static HomogPoly monomial(int n, const Monomial& m, double c = 1.0);

  int dimension() const { return n_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }
  bool is_zero() const { return terms_.empty(); }

  double coeff(const Monomial& m) const;
  // Accumulates c into the coefficient of m; prunes exact zeros.
  void add_term(const Monomial& m, double c);

  HomogPoly& operator+=(const HomogPoly& other);
  HomogPoly& operator-=(const HomogPoly& other);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  HomogPoly operator-() const;
  HomogPoly operator*(const HomogPoly& other) const;
  HomogPoly operator*(double c) const;
  friend HomogPoly operator*(double c, const HomogPoly& p) { return p * c; }

  double eval(std::span<const double> x) const;
  std::vector<HomogPoly> gradient() const;
  double max_abs_coeff() const;
  std::string to_string() const;

  bool operator==(const HomogPoly& other) const;

 private:
  void check_same_shape(const HomogPoly& other) const;

  int n_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

// x1^2 + ... + xn^2.
HomogPoly norm_sq(int n);

// Inner product of two polynomial vectors of equal length.
HomogPoly dot(std::span<const HomogPoly> a, std::span<const HomogPoly> b);

// Entry (i, j) is d(basis[i])/d(x_{j+1}).
std::vector<std::vector<HomogPoly>> jacobian(const MonomialBasis& basis);

// p(x) / (x1^2+...+xn^2)^r.
double rational_eval(const HomogPoly& p, int r, std::span<const double> x);

// Max |coefficient| of a - b over the union of supports.
double max_abs_coeff_diff(const HomogPoly& a, const HomogPoly& b);

}  // namespace ratlyap
