#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ratlyap/sosgram.hpp"

namespace ratlyap {

// Pure semidefinite feasibility problem: find PSD blocks satisfying sparse
// affine equality rows. Row entries address the packed upper triangle
// (i <= j) of a block; off-diagonal values already include the factor 2 of
// the symmetric inner product.
struct SdpProblem {
  struct Block {
    std::string name;
    int size = 0;
  };
  struct Entry {
    int block = 0;
    int i = 0;
    int j = 0;
    double value = 0.0;
  };
  struct Row {
    std::vector<Entry> entries;  // sorted by (block, i, j), deduplicated
    double rhs = 0.0;
  };

  std::vector<Block> blocks;
  std::vector<Row> rows;

  void validate() const;
  double max_abs_coeff() const;
};

enum class SolveStatus { feasible, infeasible, inaccurate, failed };

std::string to_string(SolveStatus status);

struct SdpSolution {
  SolveStatus status = SolveStatus::failed;
  // Values of the problem's blocks (for problems built by to_sdp these are
  // the shifted variables, so the full Gram matrices are I + value).
  std::vector<Eigen::MatrixXd> block_values;
  // Recomputed from the returned blocks, never copied from the solver loop.
  double max_equality_residual = 0.0;
  std::vector<double> min_eigenvalues;
  // Interior margin estimate from the homogeneous embedding; negative or
  // near-zero values indicate infeasibility.
  double margin = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  std::string message;
};

struct SolveSettings {
  int max_iters = 200000;
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;
  double time_budget_ms = 0.0;  // 0 disables
  // Trace of the normalized embedding; 0 picks 2 * (total block size + 1).
  double trace_param = 0.0;
  // A problem is called feasible when the exactly-projected point keeps at
  // least this interior margin (relative to the embedding scale).
  double margin_tol = 1e-5;
  // Residual tolerance for the returned solution, scaled by max |coeff|.
  double feas_tol = 1e-7;
  double eig_tol = 1e-8;
};

// Shift P = I + P0, Q = I + Q0: same functionals over the shifted blocks,
// right-hand side = (value of the row at P = Q = I) moved across.
SdpProblem to_sdp(const AffineGramSystem& system);

// Feasibility via a homogeneous margin embedding solved with the first-order
// conic engine, followed by an exact projection onto the equality rows.
// "feasible" means a strictly interior point was recovered and re-verified;
// problems whose feasible set has empty interior are reported infeasible
// (every Gram system produced by to_sdp is either strictly feasible or
// infeasible, so the distinction is harmless there).
SdpSolution solve(const SdpProblem& problem, const SolveSettings& settings = {});

// Sparse text export, layout documented in the README:
//   line 1: number of rows m
//   line 2: number of blocks
//   line 3: block sizes
//   line 4: m right-hand sides
//   then one "row block i j value" line per nonzero (all indices 1-based).
std::string to_sdpa_text(const SdpProblem& problem);

}  // namespace ratlyap
