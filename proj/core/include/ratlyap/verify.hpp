#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "ratlyap/dynamics.hpp"
#include "ratlyap/sdp.hpp"
#include "ratlyap/sosgram.hpp"

namespace ratlyap {

struct VerifySettings {
  // Identity residual bound, relative to the largest coefficient on either
  // side of the recomputed Gram identity.
  double residual_tol = 1e-6;
  double eig_tol = 1e-8;
  int sphere_samples = 200;
  // Sample positivity margin after normalizing by the largest sample.
  double margin_tol = 1e-9;
  std::uint64_t seed = 0x72617479617042ULL;
};

struct CertificateDiagnostics {
  double identity_residual = 0.0;
  double min_eig_P = 0.0;
  double min_eig_Q = 0.0;
  double sphere_min_V = 0.0;
  double sphere_min_Vdot = 0.0;
  std::uint64_t sample_seed = 0;
};

// A stability witness: Gram matrices for the candidate numerator and for the
// numerator of its negated derivative, at one hierarchy level.
struct Certificate {
  CandidateShape shape;
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  CertificateDiagnostics diagnostics;
  std::string tool_version;
};

struct CheckResult {
  bool pass = false;
  std::string reason;
  CertificateDiagnostics diagnostics;
};

// V(x) = numerator(x) / (x1^2+...+xn^2)^r with numerator homogeneous of
// degree s > 2r.
struct RationalLyapunov {
  HomogPoly numerator;
  int r = 0;

  double eval(std::span<const double> x) const {
    return rational_eval(numerator, r, x);
  }
};

RationalLyapunov make_rational_lyapunov(HomogPoly numerator, int r);

// The candidate encoded by a certificate: numerator m(x)' P m(x).
RationalLyapunov lyapunov_from_certificate(const Certificate& cert);

// (x1^4 + x2^4) / (x1^2 + x2^2), the built-in witness for the quintic family.
RationalLyapunov builtin_quintic_w();

// Full independent certificate check: recomputes both sides of the Gram
// identity from (P, Q) and f, checks the spectral margins P, Q >= (1-tol) I,
// and samples both numerators on the unit sphere against their
// spectral lower bounds. Never reads solver diagnostics.
CheckResult check_certificate(const VectorField& f, const Certificate& cert,
                              const VerifySettings& settings = {});

// Numerator of -dV/dt along f, together with the denominator exponent r+1:
//   -||x||^2 <grad p, f> + 2 r p <x, f>.
std::pair<HomogPoly, int> lyapunov_derivative(const RationalLyapunov& V,
                                              const VectorField& f);

// Sphere-sampling falsifier for the two Lyapunov inequalities. A pass is
// evidence, not proof; proofs come from check_certificate only.
CheckResult check_candidate(const RationalLyapunov& V, const VectorField& f,
                            int samples, const VerifySettings& settings = {});

// Max increase of V between consecutive trajectory samples; skips samples
// inside the numerical floor around the origin.
double trajectory_decrease(const std::function<double(std::span<const double>)>& V,
                           const Trajectory& traj);
double trajectory_decrease(const RationalLyapunov& V, const Trajectory& traj);

// Deterministic uniform sphere sample stream (recorded-seed reproducibility).
std::vector<std::vector<double>> sphere_samples(int n, int count,
                                                std::uint64_t seed);

}  // namespace ratlyap
