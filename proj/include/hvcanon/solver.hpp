#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hvcanon/models.hpp"
#include "hvcanon/simplex.hpp"

namespace hvcanon {

// A pair of deterministic response functions, one per party, mapping each
// measurement index to an outcome index.
struct DetStrategy {
  std::vector<std::size_t> f_a;  // indexed by Y_a, values in X_a
  std::vector<std::size_t> f_b;  // indexed by Y_b, values in X_b

  // Stable label usable as a hidden-state name, e.g. "a1.0b0.0": outcome
  // indices per measurement, '.'-separated, party a then party b.
  std::string name() const;

  friend bool operator==(const DetStrategy& a, const DetStrategy& b) {
    return a.f_a == b.f_a && a.f_b == b.f_b;
  }
};

// All |X_a|^|Y_a| * |X_b|^|Y_b| strategies in odometer order (party a
// outer, last measurement fastest). Throws std::runtime_error when the
// count exceeds the strategy cap (see EnumerationCaps).
std::vector<DetStrategy> enumerate_strategies(const EmpiricalModel& e);

// Linear functional over observable cells separating e from every
// deterministic strategy: value_on_e > strategy_max, both exact. The
// functional acts on conditional behaviors q(x_a,x_b | y_a,y_b) over the
// positive-mass contexts.
struct Certificate {
  // Keyed by (x_a, x_b, y_a, y_b) label indices.
  std::map<std::array<std::size_t, 4>, Rational> cell_coeffs;
  Rational value_on_e;
  Rational strategy_max;
};

struct FeasibilityResult {
  bool feasible = false;
  // Feasible case: positive weights on strategies, summing to 1, plus the
  // reconstructed hidden-variable model (hidden states named after the
  // strategies). The model is re-verified to realize e and to satisfy
  // hidden-variable independence from measurements, locality, and weak
  // determinism before being returned.
  std::vector<std::pair<DetStrategy, Rational>> weights;
  std::optional<HVModel> model;
  // Infeasible case.
  std::optional<Certificate> certificate;
};

// Decides whether e is a convex combination of deterministic strategies on
// its positive-mass contexts, by exact phase-one simplex.
FeasibilityResult solve_local(const EmpiricalModel& e);

struct ChshResult {
  Rational value;        // E(0,0) + E(0,1) + E(1,0) - E(1,1)
  Rational max_abs;      // max |.| over the 8 minus-position/sign variants
  std::vector<Rational> correlators;  // E(ya,yb), yb fastest
};

// Requires two outcomes and exactly two measurements per side, and positive
// mass on all four contexts. Outcome labels "1"/"+1"/"-1" are read as their
// signs; otherwise the first label counts as +1 and the second as -1.
ChshResult chsh_value(const EmpiricalModel& e);

// Maximum of the symmetrized functional over all 16 deterministic
// strategies (brute force); equals 2.
Rational chsh_strategy_bound();

}  // namespace hvcanon
