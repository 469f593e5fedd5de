#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ratlyap {

// A power product x1^e1 * ... * xn^en. The exponent vector length fixes the
// ambient dimension.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);

  int dimension() const { return static_cast<int>(exps_.size()); }
  int degree() const;
  const std::vector<int>& exponents() const { return exps_; }
  int exponent(int i) const { return exps_.at(static_cast<size_t>(i)); }

  double eval(std::span<const double> x) const;
  Monomial times(const Monomial& other) const;
  std::string to_string() const;

  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

 private:
  std::vector<int> exps_;
};

// Graded lexicographic order with x1 > x2 > ...: lower total degree first,
// and within one degree the lexicographically larger exponent vector first,
// so the degree-2 basis in two variables lists x1^2, x1*x2, x2^2.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_less(a, b);
  }
};

// All monomials of one degree in grlex order. Two calls with equal arguments
// produce identical orderings.
struct MonomialBasis {
  int n = 0;
  int degree = 0;
  std::vector<Monomial> items;

  int size() const { return static_cast<int>(items.size()); }
  const Monomial& operator[](int i) const {
    return items[static_cast<size_t>(i)];
  }
  // Position of m in the basis, -1 when absent. Binary search over the
  // grlex-sorted items.
  int index_of(const Monomial& m) const;
};

// The C(n+k-1, k) monomials of degree k in n variables.
MonomialBasis enumerate_monomials(int n, int k);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// base^e for small nonnegative integer exponents.
double ipow(double base, int e);

}  // namespace ratlyap
