#include "ratlyap/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ratlyap {

RationalLyapunov make_rational_lyapunov(HomogPoly numerator, int r) {
  if (r < 0) throw std::invalid_argument("denominator exponent must be >= 0");
  if (numerator.degree() <= 2 * r) {
    throw std::invalid_argument("numerator degree must exceed 2r");
  }
  return RationalLyapunov{std::move(numerator), r};
}

RationalLyapunov lyapunov_from_certificate(const Certificate& cert) {
  return make_rational_lyapunov(gram_poly(cert.P, cert.shape.m_basis),
                                cert.shape.r);
}

RationalLyapunov builtin_quintic_w() {
  HomogPoly num(2, 4, {{{4, 0}, 1.0}, {{0, 4}, 1.0}});
  return make_rational_lyapunov(std::move(num), 1);
}

std::vector<std::vector<double>> sphere_samples(int n, int count,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    std::vector<double> x(static_cast<size_t>(n));
    double nrm = 0.0;
    for (auto& v : x) {
      v = gauss(rng);
      nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    for (auto& v : x) v /= nrm;
    out.push_back(std::move(x));
  }
  return out;
}

CheckResult check_certificate(const VectorField& f, const Certificate& cert,
                              const VerifySettings& settings) {
  const CandidateShape& shape = cert.shape;
  if (f.dimension() != shape.n) {
    throw std::invalid_argument("certificate dimension does not match field");
  }
  if (!f.is_homogeneous(shape.d)) {
    throw std::invalid_argument(
        "certificate declares degree " + std::to_string(shape.d) +
        " but the field is not homogeneous of that degree");
  }
  const int k = shape.m_basis.size();
  const int l = shape.z_basis.size();
  if (cert.P.rows() != k || cert.P.cols() != k || cert.Q.rows() != l ||
      cert.Q.cols() != l) {
    throw std::invalid_argument("certificate matrix sizes do not match shape");
  }

  CheckResult res;
  res.diagnostics.sample_seed = settings.seed;

  // Spectral margins: P >= I and Q >= I up to tolerance.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esP(cert.P);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esQ(cert.Q);
  res.diagnostics.min_eig_P = esP.eigenvalues().minCoeff();
  res.diagnostics.min_eig_Q = esQ.eigenvalues().minCoeff();

  // Identity residual: both sides rebuilt symbolically from P and Q.
  const HomogPoly lhs = gram_poly(cert.Q, shape.z_basis);
  const LieNumeratorMap lie(f, shape);
  const HomogPoly rhs = lie.apply(cert.P);
  const double scale =
      std::max({1.0, lhs.max_abs_coeff(), rhs.max_abs_coeff()});
  res.diagnostics.identity_residual = max_abs_coeff_diff(lhs, rhs);

  // Sphere sampling of both numerators against their spectral lower bounds.
  const HomogPoly p_num = gram_poly(cert.P, shape.m_basis);
  double min_v = std::numeric_limits<double>::infinity();
  double min_vdot = std::numeric_limits<double>::infinity();
  double sample_scale = 1.0;
  bool sample_ok = true;
  const auto samples =
      sphere_samples(shape.n, settings.sphere_samples, settings.seed);
  for (const auto& x : samples) {
    double msq = 0.0, zsq = 0.0;
    for (const auto& mono : shape.m_basis.items) {
      const double mv = mono.eval(x);
      msq += mv * mv;
    }
    for (const auto& mono : shape.z_basis.items) {
      const double zv = mono.eval(x);
      zsq += zv * zv;
    }
    const double pv = p_num.eval(x);
    const double dv = rhs.eval(x);
    min_v = std::min(min_v, pv);
    min_vdot = std::min(min_vdot, dv);
    sample_scale = std::max({sample_scale, std::abs(pv), std::abs(dv)});
    if (pv < res.diagnostics.min_eig_P * msq - 1e-9 * sample_scale ||
        dv < res.diagnostics.min_eig_Q * zsq - 1e-9 * sample_scale) {
      sample_ok = false;
    }
  }
  res.diagnostics.sphere_min_V = min_v;
  res.diagnostics.sphere_min_Vdot = min_vdot;

  if (res.diagnostics.identity_residual > settings.residual_tol * scale) {
    res.reason = "identity residual " +
                 std::to_string(res.diagnostics.identity_residual)
                 + " exceeds tolerance";
    return res;
  }
  if (res.diagnostics.min_eig_P < 1.0 - settings.eig_tol) {
    res.reason = "min eigenvalue of P is " +
                 std::to_string(res.diagnostics.min_eig_P) + " < 1";
    return res;
  }
  if (res.diagnostics.min_eig_Q < 1.0 - settings.eig_tol) {
    res.reason = "min eigenvalue of Q is " +
                 std::to_string(res.diagnostics.min_eig_Q) + " < 1";
    return res;
  }
  if (!sample_ok) {
    res.reason = "sphere samples violate the spectral lower bound";
    return res;
  }
  res.pass = true;
  res.reason = "ok";
  return res;
}

std::pair<HomogPoly, int> lyapunov_derivative(const RationalLyapunov& V,
                                              const VectorField& f) {
  const int n = V.numerator.dimension();
  const auto deg = f.homogeneous_degree();
  if (!deg) {
    throw std::invalid_argument(
        "derivative numerator requires a homogeneous vector field");
  }
  const std::vector<HomogPoly> fh = f.homogeneous_components(*deg);
  const std::vector<HomogPoly> grad = V.numerator.gradient();
  const HomogPoly grad_dot_f = dot(grad, fh);

  HomogPoly num = norm_sq(n) * grad_dot_f * -1.0;
  if (V.r > 0) {
    std::vector<HomogPoly> xs;
    xs.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) xs.push_back(HomogPoly::variable(n, i));
    num += V.numerator * dot(xs, fh) * (2.0 * V.r);
  }
  return {num, V.r + 1};
}

CheckResult check_candidate(const RationalLyapunov& V, const VectorField& f,
                            int samples, const VerifySettings& settings) {
  CheckResult res;
  res.diagnostics.sample_seed = settings.seed;
  const auto [vdot_num, exp] = lyapunov_derivative(V, f);
  (void)exp;

  const int n = V.numerator.dimension();
  double min_v = std::numeric_limits<double>::infinity();
  double min_vdot = std::numeric_limits<double>::infinity();
  double max_abs_v = 0.0, max_abs_vdot = 0.0;
  for (const auto& x : sphere_samples(n, samples, settings.seed)) {
    const double pv = V.numerator.eval(x);
    const double dv = vdot_num.eval(x);
    min_v = std::min(min_v, pv);
    min_vdot = std::min(min_vdot, dv);
    max_abs_v = std::max(max_abs_v, std::abs(pv));
    max_abs_vdot = std::max(max_abs_vdot, std::abs(dv));
  }
  res.diagnostics.sphere_min_V = min_v;
  res.diagnostics.sphere_min_Vdot = min_vdot;

  if (max_abs_v == 0.0 || min_v <= settings.margin_tol * max_abs_v) {
    res.reason = "candidate numerator is not positive on sampled sphere points";
    return res;
  }
  if (max_abs_vdot == 0.0 || min_vdot <= settings.margin_tol * max_abs_vdot) {
    res.reason =
        "negated derivative numerator is not positive on sampled sphere points";
    return res;
  }
  res.pass = true;
  res.reason = "ok";
  return res;
}

double trajectory_decrease(
    const std::function<double(std::span<const double>)>& V,
    const Trajectory& traj) {
  constexpr double kOriginFloor = 1e-12;
  double max_increase = -std::numeric_limits<double>::infinity();
  double prev = 0.0;
  bool have_prev = false;
  for (const auto& x : traj.states) {
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    if (std::sqrt(nrm) < kOriginFloor) {
      have_prev = false;
      continue;
    }
    const double val = V(x);
    if (have_prev) max_increase = std::max(max_increase, val - prev);
    prev = val;
    have_prev = true;
  }
  return max_increase;
}

double trajectory_decrease(const RationalLyapunov& V, const Trajectory& traj) {
  return trajectory_decrease(
      [&V](std::span<const double> x) { return V.eval(x); }, traj);
}

}  // namespace ratlyap
