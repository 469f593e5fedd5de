#include <doctest.h>

#include <cmath>

#include "ratlyap/verify.hpp"
#include "test_util.hpp"

using namespace ratlyap;
using testing::make_rng;
using testing::random_sphere_point;

namespace {

Certificate hand_linear_certificate() {
  Certificate cert;
  cert.shape = CandidateShape::make(2, 2, 0, 1);
  cert.P = Eigen::Matrix2d::Identity();
  cert.Q = Eigen::Vector3d(2.0, 4.0, 2.0).asDiagonal();
  cert.tool_version = "test";
  return cert;
}

VectorField minus_identity_field() {
  return family_linear(-Eigen::Matrix2d::Identity());
}

}  // namespace

TEST_CASE("hand-built linear certificate verifies") {
  const CheckResult res =
      check_certificate(minus_identity_field(), hand_linear_certificate());
  CHECK(res.pass);
  CHECK(res.diagnostics.identity_residual <= 1e-14);
  CHECK(res.diagnostics.min_eig_P == doctest::Approx(1.0));
  CHECK(res.diagnostics.min_eig_Q == doctest::Approx(2.0));
  CHECK(res.diagnostics.sphere_min_V > 0.0);
  CHECK(res.diagnostics.sphere_min_Vdot > 0.0);
}

TEST_CASE("perturbed certificates fail for the right reasons") {
  const VectorField f = minus_identity_field();
  {
    Certificate cert = hand_linear_certificate();
    cert.Q(0, 0) -= 3.0;  // min eig drops to -1
    const CheckResult res = check_certificate(f, cert);
    CHECK_FALSE(res.pass);
    CHECK(res.reason.find("eigenvalue of Q") != std::string::npos);
  }
  {
    Certificate cert = hand_linear_certificate();
    cert.P.setZero();  // derivative side becomes 0, Q side stays positive
    const CheckResult res = check_certificate(f, cert);
    CHECK_FALSE(res.pass);
    CHECK(res.reason.find("residual") != std::string::npos);
  }
}

TEST_CASE("certificate shape mismatches are structural errors") {
  Certificate cert = hand_linear_certificate();
  CHECK_THROWS_AS(check_certificate(family_quintic(0.1), cert),
                  std::invalid_argument);
  cert.P = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(check_certificate(minus_identity_field(), cert),
                  std::invalid_argument);
}

TEST_CASE("derivative numerator for r = 0 candidates") {
  const RationalLyapunov V = make_rational_lyapunov(norm_sq(2), 0);
  const VectorField f = minus_identity_field();
  const auto [num, exp] = lyapunov_derivative(V, f);
  CHECK(exp == 1);
  // -||x||^2 <grad p, f> = 2 ||x||^4, so -dV/dt = 2 (x^2 + y^2).
  const HomogPoly expected(2, 4,
                           {{{4, 0}, 2.0}, {{2, 2}, 4.0}, {{0, 4}, 2.0}});
  CHECK(max_abs_coeff_diff(num, expected) <= 1e-14);
  const std::vector<double> pt = {1.0, 2.0};
  CHECK(num.eval(pt) / 5.0 == doctest::Approx(10.0));
}

TEST_CASE("derivative numerator of the quintic witness matches closed form") {
  const RationalLyapunov W = builtin_quintic_w();
  for (double theta : {0.05, 0.5, 1.5}) {
    const VectorField f = family_quintic(theta);
    const auto [num, exp] = lyapunov_derivative(W, f);
    CHECK(exp == 2);

    // sin(theta) * || ||x||^2 grad p - 2 p x ||^2, degree 10.
    const auto gradp = W.numerator.gradient();
    const HomogPoly nsq = norm_sq(2);
    std::vector<HomogPoly> s_vec;
    s_vec.push_back(nsq * gradp[0] -
                    W.numerator * HomogPoly::variable(2, 0) * 2.0);
    s_vec.push_back(nsq * gradp[1] -
                    W.numerator * HomogPoly::variable(2, 1) * 2.0);
    const HomogPoly expected =
        dot(s_vec, s_vec) * std::sin(theta);
    CHECK(max_abs_coeff_diff(num, expected) <=
          1e-10 * expected.max_abs_coeff());
  }
}

TEST_CASE("derivative numerator matches finite differences of V along f") {
  auto rng = make_rng(29);
  const RationalLyapunov W = builtin_quintic_w();
  const VectorField f = family_quintic(0.8);
  const auto [num, exp] = lyapunov_derivative(W, f);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_sphere_point(2, rng);
    const auto v = f.eval(x);
    std::vector<double> xp = x, xm = x;
    for (int i = 0; i < 2; ++i) {
      xp[i] += h * v[i];
      xm[i] -= h * v[i];
    }
    const double fd = (W.eval(xp) - W.eval(xm)) / (2.0 * h);
    const double nsq = x[0] * x[0] + x[1] * x[1];
    const double closed = -num.eval(x) / ipow(nsq, exp);
    CHECK(std::abs(fd - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("sphere falsifier accepts and rejects the expected candidates") {
  const RationalLyapunov W = builtin_quintic_w();
  CHECK(check_candidate(W, family_quintic(0.05), 200).pass);
  CHECK_FALSE(check_candidate(W, family_quintic(0.0), 200).pass);

  const RationalLyapunov V = make_rational_lyapunov(norm_sq(2), 0);
  const VectorField antistable =
      family_linear(Eigen::Matrix2d::Identity());
  CHECK_FALSE(check_candidate(V, antistable, 200).pass);
}

TEST_CASE("known-witness regression across theta") {
  const RationalLyapunov W = builtin_quintic_w();
  for (double theta : {0.05, 0.5, 1.5, 3.0}) {
    CHECK(check_candidate(W, family_quintic(theta), 200).pass);
  }
  for (double theta : {0.0, M_PI}) {
    CHECK_FALSE(check_candidate(W, family_quintic(theta), 200).pass);
  }
}

TEST_CASE("W decreases along simulated quintic trajectories") {
  auto rng = make_rng(37);
  const RationalLyapunov W = builtin_quintic_w();
  const VectorField f = family_quintic(0.05);
  const auto x0 = random_sphere_point(2, rng);
  const Trajectory traj = simulate(f, x0, 1e-3, 20.0);
  REQUIRE_FALSE(traj.diverged);
  CHECK(trajectory_decrease(W, traj) <= 1e-6);
}

TEST_CASE("cubic Lyapunov function decreases, and is conserved at theta = 0") {
  const double lambda = std::sqrt(2.0);
  auto V = [lambda](std::span<const double> x) {
    return std::pow(2.0 * x[0] * x[0] + x[1] * x[1], lambda) *
           (x[0] * x[0] + x[1] * x[1]);
  };
  {
    const VectorField f = family_cubic(M_PI / 2.0, lambda);
    const Trajectory traj = simulate(f, std::vector<double>{1.0, 0.5}, 1e-4, 3.0);
    CHECK(trajectory_decrease(V, traj) <= 1e-10);
  }
  {
    const VectorField f0 = family_cubic(0.0, lambda);
    const Trajectory traj =
        simulate(f0, std::vector<double>{1.0, 0.5}, 1e-4, 3.0);
    const double v0 = V(std::vector<double>{1.0, 0.5});
    double worst = 0.0;
    for (const auto& x : traj.states) {
      worst = std::max(worst, std::abs(V(x) - v0));
    }
    CHECK(worst / v0 <= 1e-5);
  }
}

TEST_CASE("certificate numerator satisfies the Euler identity") {
  const Certificate cert = hand_linear_certificate();
  const RationalLyapunov V = lyapunov_from_certificate(cert);
  std::vector<HomogPoly> xs = {HomogPoly::variable(2, 0),
                               HomogPoly::variable(2, 1)};
  const HomogPoly lhs = dot(V.numerator.gradient(), xs);
  const HomogPoly rhs = V.numerator * static_cast<double>(cert.shape.s);
  CHECK(max_abs_coeff_diff(lhs, rhs) <= 1e-14);
}

TEST_CASE("sphere samples are reproducible from the recorded seed") {
  const auto a = sphere_samples(3, 50, 1234);
  const auto b = sphere_samples(3, 50, 1234);
  CHECK(a == b);
  const auto c = sphere_samples(3, 50, 1235);
  CHECK(a != c);
  for (const auto& x : a) {
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    CHECK(nrm == doctest::Approx(1.0));
  }
}

TEST_CASE("rational Lyapunov construction validates the degree condition") {
  CHECK_THROWS_AS(make_rational_lyapunov(norm_sq(2), 1), std::invalid_argument);
  CHECK_THROWS_AS(make_rational_lyapunov(norm_sq(2), -1),
                  std::invalid_argument);
}
