#include "ratlyap/solver.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ratlyap {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

int svec_dim(int k) { return k * (k + 1) / 2; }

Eigen::VectorXd svec(const Eigen::MatrixXd& X) {
  const int k = static_cast<int>(X.rows());
  Eigen::VectorXd v(svec_dim(k));
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      v(idx++) = (i == j) ? X(i, j) : kSqrt2 * X(i, j);
    }
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v, int k) {
  if (v.size() != svec_dim(k)) {
    throw std::invalid_argument("smat: vector length does not match dimension");
  }
  Eigen::MatrixXd X(k, k);
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double val = (i == j) ? v(idx) : v(idx) / kSqrt2;
      X(i, j) = val;
      X(j, i) = val;
      ++idx;
    }
  }
  return X;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed in PSD projection");
  }
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

int ConeSpec::dim() const {
  int d = zero + nonneg;
  for (int k : psd) d += svec_dim(k);
  return d;
}

namespace {

void project_cone(Eigen::VectorXd& v, const ConeSpec& cone) {
  int off = 0;
  v.segment(off, cone.zero).setZero();
  off += cone.zero;
  v.segment(off, cone.nonneg) = v.segment(off, cone.nonneg).cwiseMax(0.0);
  off += cone.nonneg;
  for (int k : cone.psd) {
    const int d = svec_dim(k);
    v.segment(off, d) = svec(project_psd(smat(v.segment(off, d), k)));
    off += d;
  }
}

}  // namespace

ConicResult solve_conic(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                        const Eigen::VectorXd& c, const ConeSpec& cone,
                        const ConicSettings& settings) {
  const int m = static_cast<int>(G.rows());
  const int n = static_cast<int>(G.cols());
  if (h.size() != m || c.size() != n || cone.dim() != m) {
    throw std::invalid_argument("solve_conic: inconsistent problem dimensions");
  }

  // The x-update (G'G) x = G'(h - s - u) - c/rho reuses one factorization;
  // rho enters only through the right-hand side.
  Eigen::MatrixXd gram = G.transpose() * G;
  Eigen::LDLT<Eigen::MatrixXd> fact(gram);
  if (fact.info() != Eigen::Success || !fact.isPositive()) {
    // Rank-deficient G: regularize slightly so the iteration stays defined.
    gram += 1e-12 * Eigen::MatrixXd::Identity(n, n);
    fact.compute(gram);
  }

  ConicResult res;
  res.x = Eigen::VectorXd::Zero(n);
  res.s = h;
  project_cone(res.s, cone);
  res.u = Eigen::VectorXd::Zero(m);

  double rho = settings.rho;
  const double alpha = settings.over_relax;
  Eigen::VectorXd s_prev = res.s;
  Eigen::VectorXd gx(m);

  const auto t0 = std::chrono::steady_clock::now();
  int it = 0;
  for (it = 1; it <= settings.max_iters; ++it) {
    res.x = fact.solve(G.transpose() * (h - res.s - res.u) - c / rho);
    gx.noalias() = G * res.x;
    // Over-relaxation mixes the new G x with the previous slack.
    const Eigen::VectorXd gx_hat = alpha * gx + (1.0 - alpha) * (h - res.s);
    s_prev = res.s;
    res.s = h - gx_hat - res.u;
    project_cone(res.s, cone);
    res.u += gx_hat + res.s - h;

    if (it % settings.check_every != 0 && it != settings.max_iters) continue;

    const double r_pri = (gx + res.s - h).lpNorm<Eigen::Infinity>();
    const double r_dua =
        rho * (G.transpose() * (res.s - s_prev)).lpNorm<Eigen::Infinity>();
    const double scale_pri =
        std::max({gx.lpNorm<Eigen::Infinity>(), res.s.lpNorm<Eigen::Infinity>(),
                  h.lpNorm<Eigen::Infinity>(), 1.0});
    const double scale_dua = std::max(
        {rho * (G.transpose() * res.u).lpNorm<Eigen::Infinity>(),
         c.lpNorm<Eigen::Infinity>(), 1.0});
    res.primal_residual = r_pri;
    res.dual_residual = r_dua;
    if (r_pri <= settings.eps_abs + settings.eps_rel * scale_pri &&
        r_dua <= settings.eps_abs + settings.eps_rel * scale_dua) {
      res.converged = true;
      break;
    }
    if (!res.x.allFinite() || !res.s.allFinite()) break;

    // Residual balancing; the u rescaling keeps rho*u equal to the dual.
    if (it % 200 == 0) {
      if (r_pri > 10.0 * r_dua && rho < 1e6) {
        rho *= 2.0;
        res.u *= 0.5;
      } else if (r_dua > 10.0 * r_pri && rho > 1e-6) {
        rho *= 0.5;
        res.u *= 2.0;
      }
    }

    if (settings.time_budget_ms > 0.0) {
      const double elapsed =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - t0)
              .count();
      if (elapsed > settings.time_budget_ms) {
        res.hit_time_budget = true;
        break;
      }
    }
  }
  res.iterations = std::min(it, settings.max_iters);
  return res;
}

}  // namespace ratlyap
