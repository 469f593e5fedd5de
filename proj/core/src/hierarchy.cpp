#include "ratlyap/hierarchy.hpp"

#include <chrono>

#include "ratlyap/version.hpp"

namespace ratlyap {

std::string to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::certified: return "certified";
    case SearchOutcome::exhausted: return "exhausted";
    case SearchOutcome::aborted: return "aborted";
  }
  return "unknown";
}

LevelResult certify_level(const VectorField& f, int s, int r,
                          const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  LevelResult out;
  const auto deg = f.homogeneous_degree();
  if (!deg) {
    throw RejectedField("vector field is not homogeneous", false);
  }
  const CandidateShape shape = CandidateShape::make(f.dimension(), s, r, *deg);
  const AffineGramSystem system = assemble(f, shape);
  const SdpProblem problem = to_sdp(system);

  SolveSettings ss = config.solver;
  if (config.level_time_budget_ms > 0.0) {
    ss.time_budget_ms = config.level_time_budget_ms;
  }
  const SdpSolution sol = solve(problem, ss);
  out.solver_status = sol.status;
  out.solver_margin = sol.margin;
  out.message = sol.message;

  if (sol.status == SolveStatus::feasible) {
    Certificate cert;
    cert.shape = shape;
    const int k = shape.m_basis.size();
    const int l = shape.z_basis.size();
    cert.P = Eigen::MatrixXd::Identity(k, k) + sol.block_values[0];
    cert.Q = Eigen::MatrixXd::Identity(l, l) + sol.block_values[1];
    cert.tool_version = std::string(kToolVersion);
    const CheckResult check = check_certificate(f, cert, config.verify);
    cert.diagnostics = check.diagnostics;
    if (check.pass) {
      out.certificate = std::move(cert);
    } else {
      out.message = "solver reported feasible but verification failed: " +
                    check.reason;
    }
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

SearchReport search(const VectorField& f, const SearchConfig& config) {
  const auto deg = f.homogeneous_degree();
  if (!deg) {
    throw RejectedField(
        "vector field is not homogeneous; the hierarchy applies to "
        "homogeneous fields only (globally asymptotically stable "
        "non-homogeneous systems may admit no rational Lyapunov function "
        "at all)",
        false);
  }
  if (*deg >= 2 && *deg % 2 == 0) {
    throw RejectedField(
        "homogeneous vector fields of even degree are never asymptotically "
        "stable; nothing to search for",
        true);
  }
  if (config.s_max < 2 || config.s_max % 2 != 0) {
    throw std::invalid_argument("s_max must be an even integer >= 2");
  }

  SearchReport report;
  for (int s = 2; s <= config.s_max; s += 2) {
    const int r_hi = config.r_zero_only ? 0 : s / 2 - 1;
    for (int r = 0; r <= r_hi; ++r) {
      LevelResult level = certify_level(f, s, r, config);
      report.levels.push_back({s, r, level.solver_status, level.wall_ms,
                               level.solver_margin, level.message});
      if (level.certificate) {
        report.outcome = SearchOutcome::certified;
        report.certificate = std::move(level.certificate);
        report.note = "certified at (s, r) = (" + std::to_string(s) + ", " +
                      std::to_string(r) + ")";
        return report;
      }
      if (level.solver_status == SolveStatus::failed) {
        report.outcome = SearchOutcome::aborted;
        report.note = "aborted at (s, r) = (" + std::to_string(s) + ", " +
                      std::to_string(r) + "): " + level.message;
        return report;
      }
    }
  }
  report.outcome = SearchOutcome::exhausted;
  report.note =
      "search exhausted the schedule up to s_max = " +
      std::to_string(config.s_max) +
      " without finding a certificate; this allows no conclusion about "
      "instability (the required numerator degree can exceed any fixed cap)";
  return report;
}

}  // namespace ratlyap
