#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratlyap/sdp.hpp"
#include "ratlyap/verify.hpp"

namespace ratlyap {

// Thrown when the hierarchy refuses an input field outright. `definitive` is
// true only for the even-degree case, where the refusal doubles as a
// "not asymptotically stable" verdict.
class RejectedField : public std::runtime_error {
 public:
  RejectedField(std::string what, bool definitive)
      : std::runtime_error(std::move(what)), definitive_(definitive) {}
  bool definitive_verdict() const { return definitive_; }

 private:
  bool definitive_;
};

struct SearchConfig {
  int s_max = 12;  // even
  bool r_zero_only = false;
  double level_time_budget_ms = 0.0;  // 0 disables; forwarded to the solver
  SolveSettings solver;
  VerifySettings verify;
};

struct LevelRecord {
  int s = 0;
  int r = 0;
  SolveStatus status = SolveStatus::failed;
  double wall_ms = 0.0;
  double solver_margin = 0.0;
  std::string message;
};

enum class SearchOutcome { certified, exhausted, aborted };

std::string to_string(SearchOutcome outcome);

struct SearchReport {
  SearchOutcome outcome = SearchOutcome::aborted;
  std::vector<LevelRecord> levels;
  std::optional<Certificate> certificate;
  // Human-readable summary; for exhausted searches it states explicitly that
  // exhaustion allows no conclusion about instability.
  std::string note;
};

struct LevelResult {
  std::optional<Certificate> certificate;
  SolveStatus solver_status = SolveStatus::failed;
  double solver_margin = 0.0;
  double wall_ms = 0.0;
  std::string message;
};

// One hierarchy level: assemble, solve, and (on solver success) fully verify.
// A certificate is returned only when the independent verification passes.
// Solver failure yields an empty certificate with diagnostics, never a throw.
LevelResult certify_level(const VectorField& f, int s, int r,
                          const SearchConfig& config);

// The level schedule: s = 2, 4, ..., s_max; for each s, r = 0, ..., s/2 - 1
// (r = 0 only in r_zero_only mode). Stops at the first verified level.
// Throws RejectedField for non-homogeneous fields and for homogeneous fields
// of even degree >= 2 (the latter is a definitive instability verdict).
SearchReport search(const VectorField& f, const SearchConfig& config = {});

}  // namespace ratlyap
