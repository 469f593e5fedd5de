#include <doctest.h>

#include <Eigen/Dense>

#include "ratlyap/sdp.hpp"
#include "ratlyap/solver.hpp"
#include "test_util.hpp"

using namespace ratlyap;
using testing::make_rng;
using testing::random_symmetric;

namespace {

SdpProblem hand_example() {
  // The s = 2, r = 0 system for f = -x in the plane.
  const VectorField f = family_linear(-Eigen::Matrix2d::Identity());
  return to_sdp(assemble(f, CandidateShape::make(2, 2, 0, 1)));
}

double eval_row(const SdpProblem::Row& row,
                const std::vector<Eigen::MatrixXd>& blocks) {
  double v = 0.0;
  for (const auto& e : row.entries) {
    v += e.value * blocks[static_cast<size_t>(e.block)](e.i, e.j);
  }
  return v;
}

}  // namespace

TEST_CASE("svec and smat round trip") {
  auto rng = make_rng(2);
  for (int k : {1, 3, 6}) {
    const Eigen::MatrixXd X = random_symmetric(k, rng);
    const Eigen::VectorXd v = svec(X);
    REQUIRE(v.size() == svec_dim(k));
    CHECK((smat(v, k) - X).norm() <= 1e-14);
    const Eigen::MatrixXd Y = random_symmetric(k, rng);
    // The packing is an isometry for the symmetric inner product.
    CHECK(v.dot(svec(Y)) ==
          doctest::Approx((X * Y).trace()).epsilon(1e-12));
  }
}

TEST_CASE("psd projection clamps negative eigenvalues") {
  auto rng = make_rng(4);
  const Eigen::MatrixXd X = random_symmetric(4, rng);
  const Eigen::MatrixXd P = project_psd(X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  // Projection is idempotent and fixes PSD inputs.
  CHECK((project_psd(P) - P).norm() <= 1e-12);
  const Eigen::MatrixXd S = X * X.transpose();
  CHECK((project_psd(S) - S).norm() <= 1e-10);
}

TEST_CASE("shifted problem structure matches the hand example") {
  const SdpProblem prob = hand_example();
  REQUIRE(prob.blocks.size() == 2);
  CHECK(prob.blocks[0].name == "P0");
  CHECK(prob.blocks[0].size == 2);
  CHECK(prob.blocks[1].name == "Q0");
  CHECK(prob.blocks[1].size == 3);
  REQUIRE(prob.rows.size() == 5);

  // Rows are indexed by [x^4, x^3 y, x^2 y^2, x y^3, y^4].
  CHECK(prob.rows[0].rhs == doctest::Approx(1.0));
  CHECK(prob.rows[1].rhs == doctest::Approx(0.0));
  CHECK(prob.rows[2].rhs == doctest::Approx(3.0));
  CHECK(prob.rows[3].rhs == doctest::Approx(0.0));
  CHECK(prob.rows[4].rhs == doctest::Approx(1.0));

  // The known feasible point P0 = 0, Q0 = diag(1, 3, 1) satisfies every row.
  std::vector<Eigen::MatrixXd> blocks = {
      Eigen::Matrix2d::Zero(), Eigen::Vector3d(1.0, 3.0, 1.0).asDiagonal()};
  for (const auto& row : prob.rows) {
    CHECK(eval_row(row, blocks) == doctest::Approx(row.rhs));
  }
  prob.validate();
}

TEST_CASE("solving the hand example yields a verified interior point") {
  const SdpProblem prob = hand_example();
  const SdpSolution sol = solve(prob);
  REQUIRE(sol.status == SolveStatus::feasible);
  CHECK(sol.max_equality_residual <= 1e-8);
  REQUIRE(sol.block_values.size() == 2);
  REQUIRE(sol.min_eigenvalues.size() == 2);
  CHECK(sol.min_eigenvalues[0] >= -1e-8);
  CHECK(sol.min_eigenvalues[1] >= -1e-8);

  // Shift correctness: the unshifted matrices dominate the identity.
  for (size_t b = 0; b < 2; ++b) {
    const Eigen::MatrixXd X =
        Eigen::MatrixXd::Identity(sol.block_values[b].rows(),
                                  sol.block_values[b].cols()) +
        sol.block_values[b];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
    CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-8);
  }
}

TEST_CASE("zero-row problem is trivially feasible") {
  SdpProblem prob;
  prob.blocks = {{"P0", 2}, {"Q0", 3}};
  const SdpSolution sol = solve(prob);
  CHECK(sol.status == SolveStatus::feasible);
  CHECK(sol.max_equality_residual == 0.0);
}

TEST_CASE("contradictory rows are reported infeasible") {
  {
    // 0 = 1 with no support at all.
    SdpProblem prob;
    prob.blocks = {{"P0", 1}};
    prob.rows.push_back({{}, 1.0});
    const SdpSolution sol = solve(prob);
    CHECK(sol.status == SolveStatus::infeasible);
  }
  {
    // X(0,0) = -5 cannot hold for a PSD block.
    SdpProblem prob;
    prob.blocks = {{"P0", 1}};
    prob.rows.push_back({{{0, 0, 0, 1.0}}, -5.0});
    const SdpSolution sol = solve(prob);
    CHECK(sol.status == SolveStatus::infeasible);
  }
}

TEST_CASE("partial matrix completion") {
  // X(0,0) = 1 and X(0,1) = 2 admit PSD completions (X(1,1) >= 4).
  SdpProblem feasible;
  feasible.blocks = {{"X", 2}};
  feasible.rows.push_back({{{0, 0, 0, 1.0}}, 1.0});
  feasible.rows.push_back({{{0, 0, 1, 2.0}}, 4.0});
  const SdpSolution sol = solve(feasible);
  REQUIRE(sol.status == SolveStatus::feasible);
  CHECK(sol.block_values[0](0, 0) == doctest::Approx(1.0));
  CHECK(sol.block_values[0](0, 1) == doctest::Approx(2.0));
  CHECK(sol.block_values[0](1, 1) >= 4.0 - 1e-7);

  // X(0,0) = X(1,1) = 1 with X(0,1) = 4 has no PSD completion.
  SdpProblem infeasible;
  infeasible.blocks = {{"X", 2}};
  infeasible.rows.push_back({{{0, 0, 0, 1.0}}, 1.0});
  infeasible.rows.push_back({{{0, 1, 1, 1.0}}, 1.0});
  infeasible.rows.push_back({{{0, 0, 1, 2.0}}, 8.0});
  CHECK(solve(infeasible).status == SolveStatus::infeasible);
}

TEST_CASE("identical problems produce identical outcomes") {
  const SdpProblem prob = hand_example();
  const SdpSolution a = solve(prob);
  const SdpSolution b = solve(prob);
  CHECK(a.status == b.status);
  CHECK(a.margin == b.margin);
  CHECK(a.iterations == b.iterations);
  CHECK((a.block_values[0] - b.block_values[0]).norm() == 0.0);
  CHECK((a.block_values[1] - b.block_values[1]).norm() == 0.0);
}

TEST_CASE("problem validation rejects malformed rows") {
  SdpProblem prob;
  prob.blocks = {{"X", 2}};
  prob.rows.push_back({{{0, 1, 0, 1.0}}, 0.0});  // i > j
  CHECK_THROWS_AS(prob.validate(), std::invalid_argument);

  SdpProblem prob2;
  prob2.blocks = {{"X", 2}};
  prob2.rows.push_back({{{1, 0, 0, 1.0}}, 0.0});  // bad block
  CHECK_THROWS_AS(prob2.validate(), std::invalid_argument);

  SdpProblem prob3;
  CHECK_THROWS_AS(prob3.validate(), std::invalid_argument);  // no blocks
}

TEST_CASE("sparse text export") {
  const SdpProblem prob = hand_example();
  const std::string text = to_sdpa_text(prob);
  CHECK(text.substr(0, 2) == "5\n");
  CHECK(text.find("\n2\n") != std::string::npos);
  CHECK(text.find("2 3") != std::string::npos);
}

TEST_CASE("conic engine solves a tiny linear program") {
  // min -x s.t. x <= 3  (x free, slack nonneg): Gx + s = h with G = [1].
  Eigen::MatrixXd G(1, 1);
  G << 1.0;
  Eigen::VectorXd h(1), c(1);
  h << 3.0;
  c << -1.0;
  ConeSpec cone;
  cone.nonneg = 1;
  const ConicResult res = solve_conic(G, h, c, cone);
  CHECK(res.converged);
  CHECK(res.x(0) == doctest::Approx(3.0).epsilon(1e-6));
}
