#include "ratlyap/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ratlyap {

Monomial::Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("monomial exponent must be >= 0");
  }
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

double Monomial::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension()) {
    throw std::invalid_argument("point dimension does not match monomial");
  }
  double v = 1.0;
  for (size_t i = 0; i < exps_.size(); ++i) v *= ipow(x[i], exps_[i]);
  return v;
}

Monomial Monomial::times(const Monomial& other) const {
  if (other.dimension() != dimension()) {
    throw std::invalid_argument("monomial dimension mismatch");
  }
  std::vector<int> e(exps_);
  for (size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) os << "*";
    os << "x" << (i + 1);
    if (exps_[i] > 1) os << "^" << exps_[i];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Same degree: lexicographically larger exponent vector comes first.
  return a.exponents() > b.exponents();
}

int MonomialBasis::index_of(const Monomial& m) const {
  auto it = std::lower_bound(items.begin(), items.end(), m, GrlexLess{});
  if (it == items.end() || !(*it == m)) return -1;
  return static_cast<int>(it - items.begin());
}

namespace {
void gen_monomials(int n, int k, int pos, std::vector<int>& cur,
                   std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur[static_cast<size_t>(pos)] = k;
    out.emplace_back(cur);
    return;
  }
  for (int e = k; e >= 0; --e) {
    cur[static_cast<size_t>(pos)] = e;
    gen_monomials(n, k - e, pos + 1, cur, out);
  }
}
}  // namespace

MonomialBasis enumerate_monomials(int n, int k) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (k < 0) throw std::invalid_argument("degree must be >= 0");
  MonomialBasis basis;
  basis.n = n;
  basis.degree = k;
  std::vector<int> cur(static_cast<size_t>(n), 0);
  gen_monomials(n, k, 0, cur, basis.items);
  return basis;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

double ipow(double base, int e) {
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace ratlyap
