#include "ratlyap/sdp.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ratlyap/solver.hpp"

namespace ratlyap {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

void SdpProblem::validate() const {
  if (blocks.empty()) throw std::invalid_argument("sdp: no blocks");
  for (const auto& b : blocks) {
    if (b.size < 1) throw std::invalid_argument("sdp: block size must be >= 1");
  }
  for (const auto& row : rows) {
    const Entry* prev = nullptr;
    for (const auto& e : row.entries) {
      if (e.block < 0 || e.block >= static_cast<int>(blocks.size())) {
        throw std::invalid_argument("sdp: entry block out of range");
      }
      const int k = blocks[static_cast<size_t>(e.block)].size;
      if (e.i < 0 || e.j < e.i || e.j >= k) {
        throw std::invalid_argument("sdp: entry index out of range or i > j");
      }
      if (prev != nullptr) {
        const auto a = std::tie(prev->block, prev->i, prev->j);
        const auto b = std::tie(e.block, e.i, e.j);
        if (!(a < b)) {
          throw std::invalid_argument("sdp: row entries must be sorted unique");
        }
      }
      prev = &e;
    }
  }
}

double SdpProblem::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& row : rows) {
    m = std::max(m, std::abs(row.rhs));
    for (const auto& e : row.entries) m = std::max(m, std::abs(e.value));
  }
  return m;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::inaccurate: return "inaccurate";
    case SolveStatus::failed: return "failed";
  }
  return "unknown";
}

SdpProblem to_sdp(const AffineGramSystem& system) {
  SdpProblem prob;
  prob.blocks.push_back({"P0", system.shape.m_basis.size()});
  prob.blocks.push_back({"Q0", system.shape.z_basis.size()});
  prob.rows.resize(static_cast<size_t>(system.rows()));

  for (const auto& t : system.triplets) {
    const int block = (t.block == GramBlock::P) ? 0 : 1;
    prob.rows[static_cast<size_t>(t.row)].entries.push_back(
        {block, t.i, t.j, t.value});
  }
  // Triplets arrive sorted by (row, P-before-Q, i, j); within a row that is
  // exactly the (block, i, j) order validate() expects.
  for (auto& row : prob.rows) {
    double at_identity = 0.0;
    for (const auto& e : row.entries) {
      if (e.i == e.j) at_identity += e.value;
    }
    row.rhs = -at_identity;
  }
  prob.validate();
  return prob;
}

namespace {

struct Embedding {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
  Eigen::VectorXd c;
  ConeSpec cone;
  // Equality system over (w, sigma) used by the exact polish step.
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<int> block_offsets;  // svec offset of each block within w
  int total_svec = 0;
  double tau = 0.0;
  double margin_scale = 0.0;
};

// Homogeneous margin embedding of the feasibility problem:
//   max t  s.t.  R(X) = sigma * rhs,  sum tr(X) + sigma = tau,
//                X_b - t I PSD,  sigma - t >= 0.
// A strictly feasible point of the original problem exists iff the optimal
// t is positive (after dividing X by sigma).
Embedding build_embedding(const SdpProblem& prob, const SolveSettings& st) {
  Embedding e;
  const int nblocks = static_cast<int>(prob.blocks.size());
  e.block_offsets.resize(static_cast<size_t>(nblocks));
  int total_size = 0;
  for (int b = 0; b < nblocks; ++b) {
    e.block_offsets[static_cast<size_t>(b)] = e.total_svec;
    e.total_svec += svec_dim(prob.blocks[static_cast<size_t>(b)].size);
    total_size += prob.blocks[static_cast<size_t>(b)].size;
  }
  const int m = static_cast<int>(prob.rows.size());
  const int nvar = e.total_svec + 2;  // w, sigma, t
  const int sigma_col = e.total_svec;
  const int t_col = e.total_svec + 1;

  e.tau = st.trace_param > 0.0 ? st.trace_param : 2.0 * (total_size + 1);
  e.margin_scale = e.tau / (total_size + 1);

  const int psd_rows = e.total_svec;
  const int mrows = m + 1 /*trace*/ + 1 /*nonneg*/ + psd_rows;
  e.G = Eigen::MatrixXd::Zero(mrows, nvar);
  e.h = Eigen::VectorXd::Zero(mrows);
  e.c = Eigen::VectorXd::Zero(nvar);
  e.c(t_col) = -1.0;  // maximize t
  e.cone.zero = m + 1;
  e.cone.nonneg = 1;
  for (const auto& blk : prob.blocks) e.cone.psd.push_back(blk.size);

  // Equality rows, scaled to unit max coefficient for conditioning.
  for (int r = 0; r < m; ++r) {
    const auto& row = prob.rows[static_cast<size_t>(r)];
    double scale = std::abs(row.rhs);
    for (const auto& en : row.entries) scale = std::max(scale, std::abs(en.value));
    if (scale == 0.0) scale = 1.0;
    for (const auto& en : row.entries) {
      const int off = e.block_offsets[static_cast<size_t>(en.block)] +
                      en.j * (en.j + 1) / 2 + en.i;
      const double coeff = (en.i == en.j) ? en.value : en.value / kSqrt2;
      e.G(r, off) += coeff / scale;
    }
    e.G(r, sigma_col) = -row.rhs / scale;
  }
  // Trace row.
  for (int b = 0; b < nblocks; ++b) {
    const int k = prob.blocks[static_cast<size_t>(b)].size;
    for (int j = 0; j < k; ++j) {
      e.G(m, e.block_offsets[static_cast<size_t>(b)] + j * (j + 1) / 2 + j) = 1.0;
    }
  }
  e.G(m, sigma_col) = 1.0;
  e.h(m) = e.tau;
  // Nonnegative slack: sigma - t >= 0.
  e.G(m + 1, sigma_col) = -1.0;
  e.G(m + 1, t_col) = 1.0;
  // PSD slacks: svec(X_b) - t svec(I).
  int row_off = m + 2;
  for (int b = 0; b < nblocks; ++b) {
    const int k = prob.blocks[static_cast<size_t>(b)].size;
    const int d = svec_dim(k);
    const int w_off = e.block_offsets[static_cast<size_t>(b)];
    for (int idx = 0; idx < d; ++idx) {
      e.G(row_off + idx, w_off + idx) = -1.0;
    }
    for (int j = 0; j < k; ++j) {
      e.G(row_off + j * (j + 1) / 2 + j, t_col) = 1.0;
    }
    row_off += d;
  }

  // Polish system: the zero-cone rows over (w, sigma).
  e.A = e.G.topLeftCorner(m + 1, e.total_svec + 1);
  e.b = e.h.head(m + 1);
  return e;
}

std::vector<Eigen::MatrixXd> unpack_blocks(const SdpProblem& prob,
                                           const Embedding& emb,
                                           const Eigen::VectorXd& w) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(prob.blocks.size());
  for (size_t b = 0; b < prob.blocks.size(); ++b) {
    const int k = prob.blocks[b].size;
    out.push_back(smat(w.segment(emb.block_offsets[b], svec_dim(k)), k));
  }
  return out;
}

double recompute_residual(const SdpProblem& prob,
                          const std::vector<Eigen::MatrixXd>& blocks) {
  double worst = 0.0;
  for (const auto& row : prob.rows) {
    double v = -row.rhs;
    for (const auto& en : row.entries) {
      v += en.value * blocks[static_cast<size_t>(en.block)](en.i, en.j);
    }
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::vector<double> block_min_eigs(const std::vector<Eigen::MatrixXd>& blocks) {
  std::vector<double> out;
  out.reserve(blocks.size());
  for (const auto& X : blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
    out.push_back(es.eigenvalues().minCoeff());
  }
  return out;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolveSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();
  SdpSolution sol;
  try {
    problem.validate();
    const Embedding emb = build_embedding(problem, settings);

    ConicSettings cs;
    cs.max_iters = settings.max_iters;
    cs.eps_abs = settings.eps_abs;
    cs.eps_rel = settings.eps_rel;
    cs.time_budget_ms = settings.time_budget_ms;
    const ConicResult cr = solve_conic(emb.G, emb.h, emb.c, emb.cone, cs);
    sol.iterations = cr.iterations;

    if (!cr.x.allFinite()) {
      sol.status = SolveStatus::failed;
      sol.message = "solver iterates are not finite";
      sol.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      return sol;
    }

    // Exact polish: project (w, sigma) onto the equality rows, then check the
    // interior margin of the projected point. Feasibility is decided by the
    // projected point itself, never by solver-reported quantities.
    Eigen::VectorXd z = cr.x.head(emb.total_svec + 1);
    const Eigen::VectorXd defect = emb.b - emb.A * z;
    z += emb.A.completeOrthogonalDecomposition().solve(defect);

    const Eigen::VectorXd w = z.head(emb.total_svec);
    const double sigma = z(emb.total_svec);
    const std::vector<Eigen::MatrixXd> proj = unpack_blocks(problem, emb, w);
    const std::vector<double> eigs = block_min_eigs(proj);
    double margin = sigma;
    for (double ev : eigs) margin = std::min(margin, ev);
    sol.margin = margin / emb.margin_scale;

    const double threshold = settings.margin_tol * emb.margin_scale;
    if (margin >= threshold) {
      sol.block_values.clear();
      for (const auto& X : proj) sol.block_values.push_back(X / sigma);
      sol.max_equality_residual = recompute_residual(problem, sol.block_values);
      sol.min_eigenvalues = block_min_eigs(sol.block_values);
      const double coeff_scale = std::max(1.0, problem.max_abs_coeff());
      double min_eig = sol.min_eigenvalues.empty() ? 0.0 : sol.min_eigenvalues[0];
      for (double ev : sol.min_eigenvalues) min_eig = std::min(min_eig, ev);
      if (sol.max_equality_residual <= settings.feas_tol * coeff_scale &&
          min_eig >= -settings.eig_tol) {
        sol.status = SolveStatus::feasible;
        sol.message = "interior point recovered by exact projection";
      } else {
        sol.status = SolveStatus::inaccurate;
        sol.message = "projected point failed the independent residual check";
      }
    } else {
      sol.block_values = proj;
      sol.max_equality_residual = recompute_residual(problem, sol.block_values);
      sol.min_eigenvalues = eigs;
      if (cr.converged) {
        sol.status = SolveStatus::infeasible;
        sol.message = "no interior point: optimal embedding margin is " +
                      std::to_string(sol.margin);
      } else if (cr.hit_time_budget) {
        sol.status = SolveStatus::failed;
        sol.message = "time budget exceeded before convergence";
      } else {
        sol.status = SolveStatus::inaccurate;
        sol.message = "iteration cap reached without convergence";
      }
    }
  } catch (const std::exception& ex) {
    sol.status = SolveStatus::failed;
    sol.message = std::string("solver error: ") + ex.what();
  }
  sol.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return sol;
}

std::string to_sdpa_text(const SdpProblem& problem) {
  std::ostringstream os;
  os.precision(17);
  os << problem.rows.size() << "\n";
  os << problem.blocks.size() << "\n";
  for (size_t b = 0; b < problem.blocks.size(); ++b) {
    os << (b ? " " : "") << problem.blocks[b].size;
  }
  os << "\n";
  for (size_t r = 0; r < problem.rows.size(); ++r) {
    os << (r ? " " : "") << problem.rows[r].rhs;
  }
  os << "\n";
  for (size_t r = 0; r < problem.rows.size(); ++r) {
    for (const auto& e : problem.rows[r].entries) {
      os << (r + 1) << " " << (e.block + 1) << " " << (e.i + 1) << " "
         << (e.j + 1) << " " << e.value << "\n";
    }
  }
  return os.str();
}

}  // namespace ratlyap
