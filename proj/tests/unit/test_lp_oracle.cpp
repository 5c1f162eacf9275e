// Copyright 2026 The eolpay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "eolpay/contract_solvers.hpp"
#include "eolpay/error.hpp"
#include "eolpay/lp_oracle.hpp"
#include "eolpay/random.hpp"
#include "eolpay/sampling.hpp"

using namespace eolpay;

namespace {

bool near(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("non-negative problem has exactly two primal- and dual-feasible vertices") {
  const ModelParams p = ModelParams::table_one();
  const StandardFormLP lp = non_negative_lp(p, build_normalized_system(p).c0);
  const std::vector<BasicPoint> points = enumerate_basic_points(lp);
  std::vector<std::vector<double>> both;
  for (const BasicPoint& bp : points) {
    if (bp.primal_feasible && bp.dual_feasible) both.push_back(bp.solution);
  }
  REQUIRE(both.size() == 2);
  const std::vector<double> high{0, 1, 0, 1, 0, 0};
  const std::vector<double> gap{0, 0, 0, 1 / 0.85, 0, 1 - 0.75 / 0.85};
  CHECK(((near(both[0], high, 1e-12) && near(both[1], gap, 1e-12)) ||
         (near(both[1], high, 1e-12) && near(both[0], gap, 1e-12))));
}

TEST_CASE("identity constraints with zero rhs give the origin") {
  StandardFormLP lp;
  lp.objective = {1, 1, 1};
  lp.eq_matrix = Matrix::identity(3);
  lp.eq_rhs = {0, 0, 0};
  const std::vector<BasicPoint> points = enumerate_basic_points(lp);
  REQUIRE(points.size() == 1);
  CHECK(points[0].solution == std::vector<double>{0, 0, 0});
}

TEST_CASE("solve_lp on the non-negative problem") {
  const ModelParams p = ModelParams::table_one();
  const LpOptimum opt = solve_lp(non_negative_lp(p, build_normalized_system(p).c0));
  CHECK(opt.status == LpStatus::optimal);
  CHECK(opt.value == doctest::Approx(0.44).epsilon(1e-12));
  CHECK(opt.optimal_vertices.size() == 2);
}

TEST_CASE("zero objective makes every feasible vertex optimal") {
  const ModelParams p = ModelParams::table_one();
  const StandardFormLP lp = non_negative_lp(p, Vec4{0, 0, 0, 0});
  const LpOptimum opt = solve_lp(lp);
  CHECK(opt.status == LpStatus::optimal);
  CHECK(opt.value == 0.0);
  std::size_t feasible = 0;
  for (const BasicPoint& bp : enumerate_basic_points(lp)) feasible += bp.primal_feasible ? 1 : 0;
  CHECK(opt.optimal_vertices.size() == feasible);
}

TEST_CASE("misclassified objective has a unique optimal vertex") {
  ModelParams p = ModelParams::table_one();
  p.w0 = 0.1;
  p.w1 = 0.2;
  const LpOptimum opt = solve_lp(non_negative_lp(p, misclassified_objective(p)));
  REQUIRE(opt.optimal_vertices.size() == 1);
  const std::vector<double>& x = opt.optimal_vertices[0].solution;
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(x[1] == doctest::Approx(0.0));
  CHECK(x[2] == doctest::Approx(0.0));
  CHECK(x[3] == doctest::Approx(1 / 0.85).epsilon(1e-12));
  CHECK(opt.value == doctest::Approx(0.4948235294).epsilon(1e-9));
}

TEST_CASE("oracle matches the closed form on random parameters") {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = sample_valid_params(rng);
    const LpOptimum opt = solve_lp(non_negative_lp(p, build_normalized_system(p).c0));
    REQUIRE(opt.status == LpStatus::optimal);
    CHECK(std::abs(opt.value - p.gamma) <= 1e-8);
    const NonNegativeSolution a = solve_non_negative(p, 0.0);
    const NonNegativeSolution b = solve_non_negative(p, 1.0);
    const std::vector<double> va{a.contract.p00, a.contract.p01, a.contract.p10, a.contract.p11, a.slack_v1, a.slack_v2};
    const std::vector<double> vb{b.contract.p00, b.contract.p01, b.contract.p10, b.contract.p11, b.slack_v1, b.slack_v2};
    for (const BasicPoint& v : opt.optimal_vertices) CHECK(distance_to_segment(v.solution, va, vb) <= 1e-8);
  }
}

TEST_CASE("strong duality at dual-feasible vertices") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = sample_valid_params(rng);
    Vec4 objective;
    for (double& c : objective) c = rng.uniform(0.0, 1.0);
    const StandardFormLP lp = non_negative_lp(p, objective);
    const LpOptimum opt = solve_lp(lp);
    if (opt.status != LpStatus::optimal) continue;
    for (const BasicPoint& bp : enumerate_basic_points(lp)) {
      if (bp.primal_feasible && bp.dual_feasible) CHECK(bp.value == doctest::Approx(opt.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("infeasible and unbounded problems") {
  StandardFormLP infeasible;
  infeasible.objective = {1, 1};
  infeasible.eq_matrix = Matrix{{1, 1}};
  infeasible.eq_rhs = {-1};
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  StandardFormLP unbounded;
  unbounded.objective = {-1, 0};
  unbounded.eq_matrix = Matrix{{1, -1}};
  unbounded.eq_rhs = {1};
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);
  try {
    solve_lp_or_throw(unbounded);
    FAIL("expected unbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unbounded);
  }
}

TEST_CASE("enumeration cap") {
  StandardFormLP lp;
  lp.objective.assign(30, 1.0);
  lp.eq_matrix = Matrix(10, 30, 1.0);
  for (std::size_t r = 0; r < 10; ++r) lp.eq_matrix(r, r) = 2.0;
  lp.eq_rhs.assign(10, 1.0);
  try {
    enumerate_basic_points(lp);
    FAIL("expected too-large");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::too_large);
  }
}

TEST_CASE("distance to segment") {
  CHECK(distance_to_segment({0.5, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(distance_to_segment({2, 0}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(distance_to_segment({1, 1}, {0, 0}, {0, 0}) == doctest::Approx(std::sqrt(2.0)));
}
