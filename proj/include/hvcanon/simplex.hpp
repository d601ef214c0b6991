#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "hvcanon/rational.hpp"

namespace hvcanon {

// Equality-form feasibility problem: find w >= 0 with A w = b, all exact
// rationals. Rows may be linearly dependent.
struct LinearSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> a;  // rows x cols
  std::vector<Rational> b;               // rows
};

struct SimplexFeasible {
  std::vector<Rational> solution;  // length cols, >= 0, satisfies A w = b
};

// Farkas witness of infeasibility: y with y^T A <= 0 (componentwise over
// columns) and y^T b > 0.
struct SimplexInfeasible {
  std::vector<Rational> farkas;  // length rows
};

using SimplexResult = std::variant<SimplexFeasible, SimplexInfeasible>;

// Phase-one simplex with Bland's rule; always terminates, all pivots exact.
// The returned solution or certificate is verified against the system
// before returning (std::logic_error on internal failure).
SimplexResult solve_equality_feasibility(const LinearSystem& system);

}  // namespace hvcanon
