#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ratlyap {

// Symmetric-matrix vectorization with the sqrt(2) off-diagonal scaling, so
// that <A, B> = svec(A) . svec(B) and PSD projection commutes with packing.
// Packed upper triangle, column-major: (0,0), (0,1), (1,1), (0,2), ...
int svec_dim(int k);
Eigen::VectorXd svec(const Eigen::MatrixXd& X);
Eigen::MatrixXd smat(const Eigen::VectorXd& v, int k);

// Euclidean projection onto the PSD cone (eigenvalue clamping).
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& X);

// Cone of the slack vector s in G x + s = h, ordered as: zero cone entries,
// then nonnegative entries, then svec'd PSD blocks.
struct ConeSpec {
  int zero = 0;
  int nonneg = 0;
  std::vector<int> psd;

  int dim() const;
};

struct ConicSettings {
  int max_iters = 200000;
  int check_every = 25;
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;
  double rho = 1.0;
  double over_relax = 1.6;
  double time_budget_ms = 0.0;  // 0 disables the budget
};

struct ConicResult {
  Eigen::VectorXd x;
  Eigen::VectorXd s;
  Eigen::VectorXd u;  // scaled dual
  bool converged = false;
  bool hit_time_budget = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

// ADMM for the conic program  min c'x  s.t.  G x + s = h, s in K.
// Deterministic: fixed iteration schedule, no randomness; the time budget is
// the only wall-clock dependent exit and is disabled by default.
ConicResult solve_conic(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                        const Eigen::VectorXd& c, const ConeSpec& cone,
                        const ConicSettings& settings = {});

}  // namespace ratlyap
