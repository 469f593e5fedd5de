#include "ratlyap/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ratlyap {

HomogPoly::HomogPoly(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
}

HomogPoly::HomogPoly(
    int n, int degree,
    std::initializer_list<std::pair<std::vector<int>, double>> terms)
    : HomogPoly(n, degree) {
  for (const auto& [exps, c] : terms) add_term(Monomial(exps), c);
}

HomogPoly HomogPoly::constant(int n, double c) {
  HomogPoly p(n, 0);
  p.add_term(Monomial(std::vector<int>(static_cast<size_t>(n), 0)), c);
  return p;
}

HomogPoly HomogPoly::variable(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
  HomogPoly p(n, 1);
  std::vector<int> e(static_cast<size_t>(n), 0);
  e[static_cast<size_t>(i)] = 1;
  p.add_term(Monomial(std::move(e)), 1.0);
  return p;
}

HomogPoly HomogPoly::monomial(int n, const Monomial& m, double c) {
  HomogPoly p(n, m.degree());
  p.add_term(m, c);
  return p;
}

double HomogPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void HomogPoly::add_term(const Monomial& m, double c) {
  if (m.dimension() != n_) {
    throw std::invalid_argument("term dimension does not match polynomial");
  }
  if (m.degree() != degree_) {
    throw std::invalid_argument("term degree does not match polynomial degree");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void HomogPoly::check_same_shape(const HomogPoly& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomial dimension mismatch");
  if (other.degree_ != degree_) {
    throw std::invalid_argument("polynomial degree mismatch");
  }
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& other) {
  check_same_shape(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& other) {
  check_same_shape(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

HomogPoly HomogPoly::operator-() const { return *this * -1.0; }

HomogPoly HomogPoly::operator*(const HomogPoly& other) const {
  if (other.n_ != n_) throw std::invalid_argument("polynomial dimension mismatch");
  HomogPoly out(n_, degree_ + other.degree_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      out.add_term(ma.times(mb), ca * cb);
    }
  }
  return out;
}

HomogPoly HomogPoly::operator*(double c) const {
  HomogPoly out(n_, degree_);
  if (c == 0.0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

double HomogPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("point dimension does not match polynomial");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) sum += c * m.eval(x);
  return sum;
}

std::vector<HomogPoly> HomogPoly::gradient() const {
  std::vector<HomogPoly> grad;
  grad.reserve(static_cast<size_t>(n_));
  const int gdeg = degree_ > 0 ? degree_ - 1 : 0;
  for (int j = 0; j < n_; ++j) {
    HomogPoly dj(n_, gdeg);
    if (degree_ > 0) {
      for (const auto& [m, c] : terms_) {
        const int e = m.exponent(j);
        if (e == 0) continue;
        std::vector<int> exps = m.exponents();
        exps[static_cast<size_t>(j)] = e - 1;
        dj.add_term(Monomial(std::move(exps)), c * e);
      }
    }
    grad.push_back(std::move(dj));
  }
  return grad;
}

double HomogPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string HomogPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << std::abs(c) << "*" << m.to_string();
    first = false;
  }
  return os.str();
}

bool HomogPoly::operator==(const HomogPoly& other) const {
  return n_ == other.n_ && degree_ == other.degree_ && terms_ == other.terms_;
}

HomogPoly norm_sq(int n) {
  HomogPoly p(n, 2);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = 2;
    p.add_term(Monomial(std::move(e)), 1.0);
  }
  return p;
}

HomogPoly dot(std::span<const HomogPoly> a, std::span<const HomogPoly> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("dot: vectors must have equal nonzero length");
  }
  HomogPoly sum = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

std::vector<std::vector<HomogPoly>> jacobian(const MonomialBasis& basis) {
  if (basis.degree < 1) {
    throw std::invalid_argument("jacobian requires basis degree >= 1");
  }
  std::vector<std::vector<HomogPoly>> rows;
  rows.reserve(static_cast<size_t>(basis.size()));
  for (const Monomial& m : basis.items) {
    rows.push_back(HomogPoly::monomial(basis.n, m).gradient());
  }
  return rows;
}

double rational_eval(const HomogPoly& p, int r, std::span<const double> x) {
  double nsq = 0.0;
  for (double xi : x) nsq += xi * xi;
  return p.eval(x) / ipow(nsq, r);
}

double max_abs_coeff_diff(const HomogPoly& a, const HomogPoly& b) {
  double m = 0.0;
  for (const auto& [mono, c] : a.terms()) {
    m = std::max(m, std::abs(c - b.coeff(mono)));
  }
  for (const auto& [mono, c] : b.terms()) {
    m = std::max(m, std::abs(c - a.coeff(mono)));
  }
  return m;
}

}  // namespace ratlyap
