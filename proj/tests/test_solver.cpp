#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

#include "hvcanon/generators.hpp"
#include "hvcanon/properties.hpp"
#include "hvcanon/scenarios.hpp"
#include "hvcanon/simplex.hpp"
#include "hvcanon/solver.hpp"
#include "oracle_local.hpp"

using hvcanon::DetStrategy;
using hvcanon::EmpiricalModel;
using hvcanon::FeasibilityResult;
using hvcanon::FiniteSpace;
using hvcanon::HVModel;
using hvcanon::HvProperty;
using hvcanon::LinearSystem;
using hvcanon::ModelDims;
using hvcanon::Rational;
using hvcanon::enumerate_strategies;
using hvcanon::solve_local;

namespace {

Rational strategy_value(const hvcanon::Certificate& cert, const EmpiricalModel& e,
                        const DetStrategy& s) {
  // Independent evaluation: the functional applied to the strategy's
  // conditional behavior over the positive-mass contexts of e.
  Rational value(0);
  for (const auto& [cell, coeff] : cert.cell_coeffs) {
    if (s.f_a[cell[2]] == cell[0] && s.f_b[cell[3]] == cell[1]) value += coeff;
  }
  return value;
}

}  // namespace

TEST_CASE("phase-one simplex on tiny systems") {
  LinearSystem feasible{1, 2, {{Rational(1), Rational(2)}}, {Rational(1)}};
  auto r1 = hvcanon::solve_equality_feasibility(feasible);
  REQUIRE(std::holds_alternative<hvcanon::SimplexFeasible>(r1));
  auto w = std::get<hvcanon::SimplexFeasible>(r1).solution;
  CHECK(w[0] + 2 * w[1] == Rational(1));
  CHECK(w[0] >= 0);
  CHECK(w[1] >= 0);

  LinearSystem infeasible{
      2, 2, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}},
      {Rational(1), Rational(2)}};
  auto r2 = hvcanon::solve_equality_feasibility(infeasible);
  REQUIRE(std::holds_alternative<hvcanon::SimplexInfeasible>(r2));
  auto y = std::get<hvcanon::SimplexInfeasible>(r2).farkas;
  CHECK(y[0] * 1 + y[1] * 1 <= 0);  // y^T A, both columns coincide
  CHECK(y[0] * 1 + y[1] * 2 > 0);   // y^T b

  LinearSystem negative{1, 1, {{Rational(1)}}, {Rational(-1)}};
  REQUIRE(std::holds_alternative<hvcanon::SimplexInfeasible>(
      hvcanon::solve_equality_feasibility(negative)));
}

TEST_CASE("strategy enumeration counts and naming") {
  CHECK(enumerate_strategies(hvcanon::scenario_pr_box()).size() == 16);
  CHECK(enumerate_strategies(hvcanon::scenario_correlated_coin()).size() == 4);

  EmpiricalModel skewed = EmpiricalModel::from_cells(
      FiniteSpace({"x0", "x1", "x2"}), FiniteSpace({"x0", "x1"}),
      FiniteSpace({"m0"}), FiniteSpace({"m0", "m1"}),
      {{{"x0", "x0", "m0", "m0"}, Rational(1, 2)},
       {{"x0", "x0", "m0", "m1"}, Rational(1, 2)}});
  CHECK(enumerate_strategies(skewed).size() == 12);  // 3^1 * 2^2

  auto all = enumerate_strategies(hvcanon::scenario_pr_box());
  CHECK(all.front().name() == "a0.0b0.0");
  CHECK(all.back().name() == "a1.1b1.1");
  // Party b's last measurement varies fastest.
  CHECK(all[1].name() == "a0.0b0.1");
}

TEST_CASE("strategy cap aborts oversized enumerations") {
  REQUIRE(setenv("HVCANON_CAP", "8", 1) == 0);
  CHECK_THROWS_AS(enumerate_strategies(hvcanon::scenario_pr_box()),
                  std::runtime_error);
  REQUIRE(unsetenv("HVCANON_CAP") == 0);
  CHECK(enumerate_strategies(hvcanon::scenario_pr_box()).size() == 16);
}

TEST_CASE("the correlated coin splits over the two copy strategies") {
  FeasibilityResult r = solve_local(hvcanon::scenario_correlated_coin());
  REQUIRE(r.feasible);
  REQUIRE(r.weights.size() == 2);
  std::map<std::string, Rational> by_name;
  for (const auto& [s, weight] : r.weights) by_name[s.name()] = weight;
  CHECK(by_name.at("a0b0") == Rational(1, 2));
  CHECK(by_name.at("a1b1") == Rational(1, 2));

  REQUIRE(r.model.has_value());
  CHECK(hvcanon::realizes(*r.model, hvcanon::scenario_correlated_coin()));
  CHECK(hvcanon::check_property(*r.model, HvProperty::kLocality).holds);
  CHECK(hvcanon::check_property(*r.model, HvProperty::kLambdaIndependence).holds);
  CHECK(hvcanon::check_property(*r.model, HvProperty::kWeakDeterminism).holds);
}

TEST_CASE("product coins are locally realizable") {
  FeasibilityResult r = solve_local(hvcanon::scenario_product_coins());
  REQUIRE(r.feasible);
  Rational total(0);
  for (const auto& [s, weight] : r.weights) {
    CHECK(weight > 0);
    total += weight;
  }
  CHECK(total == Rational(1));
  CHECK(hvcanon::realizes(*r.model, hvcanon::scenario_product_coins()));
}

TEST_CASE("a point-mass experiment needs a single strategy") {
  EmpiricalModel e = hvcanon::realized_empirical(hvcanon::scenario_det());
  FeasibilityResult r = solve_local(e);
  REQUIRE(r.feasible);
  REQUIRE(r.weights.size() == 1);
  CHECK(r.weights.front().second == Rational(1));
}

TEST_CASE("the PR box is infeasible with a verified separating functional") {
  EmpiricalModel pr = hvcanon::scenario_pr_box();
  FeasibilityResult r = solve_local(pr);
  REQUIRE_FALSE(r.feasible);
  CHECK(r.weights.empty());
  REQUIRE(r.certificate.has_value());
  const auto& cert = *r.certificate;
  CHECK(cert.value_on_e > cert.strategy_max);

  // Re-derive both sides of the separation from scratch.
  Rational on_e(0);
  auto ctx = pr.context_distribution();
  for (const auto& [cell, coeff] : cert.cell_coeffs) {
    Rational mass = pr.table().mass(std::vector<std::size_t>{
        cell[0], cell[1], cell[2], cell[3]});
    Rational context = ctx.mass(std::vector<std::size_t>{cell[2], cell[3]});
    on_e += coeff * mass / context;
  }
  CHECK(on_e == cert.value_on_e);

  bool any_strategy_beats = false;
  Rational best;
  bool first = true;
  for (const DetStrategy& s : enumerate_strategies(pr)) {
    Rational v = strategy_value(cert, pr, s);
    if (v >= cert.value_on_e) any_strategy_beats = true;
    if (first || v > best) best = v;
    first = false;
  }
  CHECK_FALSE(any_strategy_beats);
  CHECK(best == cert.strategy_max);
}

TEST_CASE("the PR box maximally violates the four-correlator bound") {
  auto chsh = hvcanon::chsh_value(hvcanon::scenario_pr_box());
  CHECK(chsh.value == Rational(4));
  CHECK(chsh.max_abs == Rational(4));
  CHECK(hvcanon::chsh_strategy_bound() == Rational(2));
  REQUIRE(chsh.correlators.size() == 4);
  CHECK(chsh.correlators[0] == Rational(1));
  CHECK(chsh.correlators[3] == Rational(-1));
}

TEST_CASE("locally realizable models respect the correlator bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    HVModel p = hvcanon::random_hv_model(seed, ModelDims{2, 2, 2, 2, 3},
                                         HvProperty::kLocality);
    // chsh_value needs every context present; local generators place mass
    // on all contexts unless the context sample collapsed, so skip those.
    EmpiricalModel e = hvcanon::realized_empirical(p);
    bool all_contexts = true;
    auto ctx = e.context_distribution();
    for (std::size_t flat = 0; flat < 4; ++flat) {
      if (ctx.mass(flat) == 0) all_contexts = false;
    }
    if (!all_contexts) continue;
    auto chsh = hvcanon::chsh_value(e);
    CHECK(chsh.max_abs <= Rational(2));
  }
}

TEST_CASE("chsh rejects unsuitable shapes") {
  CHECK_THROWS_AS(hvcanon::chsh_value(hvcanon::scenario_correlated_coin()),
                  std::invalid_argument);
}

TEST_CASE("verdicts match the vertex-enumeration oracle") {
  std::mt19937_64 rng(424242);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    // Random behaviors on the 1/u grid, u <= 8, all four contexts uniform.
    std::size_t units = 1 + rng() % 8;
    std::map<std::vector<std::string>, Rational> cells;
    for (std::size_t ya = 0; ya < 2; ++ya) {
      for (std::size_t yb = 0; yb < 2; ++yb) {
        std::vector<Rational> q(4, Rational(0));
        for (std::size_t u = 0; u < units; ++u) q[rng() % 4] += Rational(1, units);
        for (std::size_t xa = 0; xa < 2; ++xa) {
          for (std::size_t xb = 0; xb < 2; ++xb) {
            Rational mass = q[xa * 2 + xb] / 4;
            if (mass == 0) continue;
            cells[{"x" + std::to_string(xa), "x" + std::to_string(xb),
                   "m" + std::to_string(ya), "m" + std::to_string(yb)}] = mass;
          }
        }
      }
    }
    FiniteSpace x({"x0", "x1"});
    FiniteSpace m({"m0", "m1"});
    EmpiricalModel e = EmpiricalModel::from_cells(x, x, m, m, cells);
    bool solver_verdict = solve_local(e).feasible;
    CHECK(solver_verdict == oracle::oracle_local_feasible(e));
    if (auto fine = oracle::oracle_chsh_fine(e)) {
      CHECK(solver_verdict == *fine);
    }
    ++checked;
  }
  CHECK(checked == 60);
}
