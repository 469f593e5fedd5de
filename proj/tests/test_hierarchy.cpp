#include <doctest.h>

#include <cmath>

#include "ratlyap/hierarchy.hpp"
#include "test_util.hpp"

using namespace ratlyap;

TEST_CASE("a Hurwitz linear field certifies at the first level") {
  Eigen::Matrix2d A;
  A << -1, 1, 0, -1;
  const SearchReport report = search(family_linear(A));
  REQUIRE(report.outcome == SearchOutcome::certified);
  REQUIRE(report.certificate.has_value());
  CHECK(report.certificate->shape.s == 2);
  CHECK(report.certificate->shape.r == 0);
  REQUIRE(report.levels.size() == 1);
  CHECK(report.levels[0].status == SolveStatus::feasible);
}

TEST_CASE("certify_level on simple inputs") {
  const VectorField stable = family_linear(-Eigen::Matrix2d::Identity());
  SearchConfig config;
  const LevelResult ok = certify_level(stable, 2, 0, config);
  CHECK(ok.certificate.has_value());
  CHECK(ok.solver_status == SolveStatus::feasible);

  const VectorField antistable = family_linear(Eigen::Matrix2d::Identity());
  const LevelResult bad = certify_level(antistable, 2, 0, config);
  CHECK_FALSE(bad.certificate.has_value());
  CHECK(bad.solver_status == SolveStatus::infeasible);
}

TEST_CASE("even-degree homogeneous fields are rejected with a verdict") {
  const HomogPoly x2(2, 2, {{{2, 0}, 1.0}});
  const HomogPoly y2(2, 2, {{{0, 2}, 1.0}});
  const VectorField f(2, {{x2}, {y2}}, 2);
  try {
    search(f);
    FAIL("expected rejection");
  } catch (const RejectedField& e) {
    CHECK(e.definitive_verdict());
    CHECK(std::string(e.what()).find("even degree") != std::string::npos);
  }
}

TEST_CASE("non-homogeneous fields are rejected without a verdict") {
  try {
    search(family_nonhomog_counterexample());
    FAIL("expected rejection");
  } catch (const RejectedField& e) {
    CHECK_FALSE(e.definitive_verdict());
    CHECK(std::string(e.what()).find("not homogeneous") != std::string::npos);
  }
}

TEST_CASE("the center case exhausts the schedule in order") {
  SearchConfig config;
  config.s_max = 4;
  const SearchReport report =
      search(family_cubic(0.0, std::sqrt(2.0)), config);
  CHECK(report.outcome == SearchOutcome::exhausted);
  REQUIRE(report.levels.size() == 3);
  CHECK(report.levels[0].s == 2);
  CHECK(report.levels[0].r == 0);
  CHECK(report.levels[1].s == 4);
  CHECK(report.levels[1].r == 0);
  CHECK(report.levels[2].s == 4);
  CHECK(report.levels[2].r == 1);
  for (const auto& lv : report.levels) {
    CHECK(lv.status == SolveStatus::infeasible);
  }
  CHECK(report.note.find("no conclusion about instability") !=
        std::string::npos);
}

TEST_CASE("r-zero-only mode restricts the schedule") {
  SearchConfig config;
  config.s_max = 6;
  config.r_zero_only = true;
  const SearchReport report =
      search(family_cubic(0.0, std::sqrt(2.0)), config);
  CHECK(report.outcome == SearchOutcome::exhausted);
  REQUIRE(report.levels.size() == 3);
  for (size_t i = 0; i < report.levels.size(); ++i) {
    CHECK(report.levels[i].s == 2 * static_cast<int>(i) + 2);
    CHECK(report.levels[i].r == 0);
  }
}

TEST_CASE("search configuration is validated") {
  SearchConfig config;
  config.s_max = 3;
  CHECK_THROWS_AS(search(family_cubic(0.5, 1.0), config),
                  std::invalid_argument);
}
