#include "ratlyap/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ratlyap {

VectorField::VectorField(int n, std::vector<std::vector<HomogPoly>> components,
                         std::optional<int> declared_degree)
    : n_(n),
      components_(std::move(components)),
      declared_degree_(declared_degree) {
  if (n < 1) throw std::invalid_argument("vector field dimension must be >= 1");
  if (static_cast<int>(components_.size()) != n) {
    throw std::invalid_argument("vector field needs one component per state");
  }
  for (auto& parts : components_) {
    int last_degree = -1;
    for (const auto& p : parts) {
      if (p.dimension() != n) {
        throw std::invalid_argument("component has wrong number of variables");
      }
      if (p.degree() <= last_degree) {
        throw std::invalid_argument(
            "component parts must have strictly increasing degrees");
      }
      last_degree = p.degree();
    }
  }
}

std::vector<double> VectorField::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("point dimension does not match vector field");
  }
  std::vector<double> out(static_cast<size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    for (const auto& p : components_[static_cast<size_t>(i)]) {
      out[static_cast<size_t>(i)] += p.eval(x);
    }
  }
  return out;
}

bool VectorField::is_homogeneous(int d) const {
  for (const auto& parts : components_) {
    if (parts.empty()) continue;  // zero component is compatible
    if (parts.size() != 1) return false;
    if (parts[0].degree() != d) return false;
  }
  return true;
}

std::optional<int> VectorField::homogeneous_degree() const {
  if (declared_degree_ && is_homogeneous(*declared_degree_)) {
    return declared_degree_;
  }
  std::optional<int> deg;
  for (const auto& parts : components_) {
    if (parts.empty()) continue;
    if (parts.size() != 1) return std::nullopt;
    if (deg && *deg != parts[0].degree()) return std::nullopt;
    deg = parts[0].degree();
  }
  return deg;
}

std::vector<HomogPoly> VectorField::homogeneous_components(int d) const {
  if (!is_homogeneous(d)) {
    throw std::invalid_argument("vector field is not homogeneous of degree " +
                                std::to_string(d));
  }
  std::vector<HomogPoly> out;
  out.reserve(static_cast<size_t>(n_));
  for (const auto& parts : components_) {
    out.push_back(parts.empty() ? HomogPoly(n_, d) : parts[0]);
  }
  return out;
}

VectorField family_nonhomog_counterexample() {
  // x' = -x + x*y
  HomogPoly f1_lin(2, 1, {{{1, 0}, -1.0}});
  HomogPoly f1_quad(2, 2, {{{1, 1}, 1.0}});
  // y' = -y
  HomogPoly f2_lin(2, 1, {{{0, 1}, -1.0}});
  return VectorField(2, {{f1_lin, f1_quad}, {f2_lin}});
}

VectorField family_cubic(double theta, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("cubic family requires lambda > 0");
  }
  // Unrotated pair:
  //   g1 = -2*lambda*y*(x^2+y^2) - 2*y*(2x^2+y^2)
  //   g2 =  4*lambda*x*(x^2+y^2) + 2*x*(2x^2+y^2)
  HomogPoly g1(2, 3,
               {{{2, 1}, -2.0 * lambda - 4.0}, {{0, 3}, -2.0 * lambda - 2.0}});
  HomogPoly g2(2, 3,
               {{{3, 0}, 4.0 * lambda + 4.0}, {{1, 2}, 4.0 * lambda + 2.0}});
  const double c = std::cos(theta), s = std::sin(theta);
  HomogPoly f1 = g1 * c + g2 * (-s);
  HomogPoly f2 = g1 * s + g2 * c;
  return VectorField(2, {{f1}, {f2}}, 3);
}

VectorField family_quintic(double theta) {
  // u = x*(x^4 + 2x^2y^2 - y^4), v = y*(-x^4 + 2x^2y^2 + y^4)
  HomogPoly u(2, 5, {{{5, 0}, 1.0}, {{3, 2}, 2.0}, {{1, 4}, -1.0}});
  HomogPoly v(2, 5, {{{4, 1}, -1.0}, {{2, 3}, 2.0}, {{0, 5}, 1.0}});
  const double c = std::cos(theta), s = std::sin(theta);
  // 2 * [[-s, -c], [c, -s]] * (u, v)
  HomogPoly f1 = u * (-2.0 * s) + v * (-2.0 * c);
  HomogPoly f2 = u * (2.0 * c) + v * (-2.0 * s);
  return VectorField(2, {{f1}, {f2}}, 5);
}

VectorField family_linear(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    throw std::invalid_argument("linear family requires a square matrix");
  }
  const int n = static_cast<int>(A.rows());
  std::vector<std::vector<HomogPoly>> comps;
  comps.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    HomogPoly fi(n, 1);
    for (int j = 0; j < n; ++j) {
      if (A(i, j) == 0.0) continue;
      std::vector<int> e(static_cast<size_t>(n), 0);
      e[static_cast<size_t>(j)] = 1;
      fi.add_term(Monomial(std::move(e)), A(i, j));
    }
    comps.push_back({fi});
  }
  return VectorField(n, std::move(comps), 1);
}

namespace {
constexpr double kDivergenceGuard = 1e12;

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}
}  // namespace

Trajectory simulate(const VectorField& f, std::span<const double> x0,
                    double step, double horizon) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (!(horizon >= step)) throw std::invalid_argument("horizon must be >= step");
  if (static_cast<int>(x0.size()) != f.dimension()) {
    throw std::invalid_argument("initial state dimension mismatch");
  }

  const int n = f.dimension();
  const long steps = static_cast<long>(std::floor(horizon / step + 1e-9));

  Trajectory traj;
  traj.step = step;
  traj.times.reserve(static_cast<size_t>(steps) + 1);
  traj.states.reserve(static_cast<size_t>(steps) + 1);

  std::vector<double> x(x0.begin(), x0.end());
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  std::vector<double> tmp(static_cast<size_t>(n));
  for (long k = 0; k < steps; ++k) {
    const std::vector<double> k1 = f.eval(x);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * step * k1[i];
    const std::vector<double> k2 = f.eval(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * step * k2[i];
    const std::vector<double> k3 = f.eval(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + step * k3[i];
    const std::vector<double> k4 = f.eval(tmp);
    for (int i = 0; i < n; ++i) {
      x[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!(norm(x) < kDivergenceGuard)) {
      traj.diverged = true;
      break;
    }
    traj.times.push_back(static_cast<double>(k + 1) * step);
    traj.states.push_back(x);
  }
  return traj;
}

double conserved_I(double lambda, double x, double y) {
  const double a = x * x + y * y;
  const double b = 2.0 * x * x + y * y;
  return a * std::pow(b, lambda);
}

}  // namespace ratlyap
