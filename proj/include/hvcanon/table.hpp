#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hvcanon/rational.hpp"
#include "hvcanon/space.hpp"

namespace hvcanon {

// An event in a single factor of a product space: a subset of that
// factor's atoms, stored as sorted distinct label indices.
struct Event {
  std::size_t factor = 0;
  std::vector<std::size_t> labels;

  static Event from_labels(const FiniteSpace& space, std::size_t factor,
                           const std::vector<std::string>& labels);
  static Event full(const FiniteSpace& space, std::size_t factor);
  static Event empty(std::size_t factor) { return Event{factor, {}}; }

  bool contains(std::size_t label_index) const;
};

// Exact probability mass function on a product of finite spaces.
// Mass is stored densely in row-major order (factor 0 most significant).
// Invariants: every mass >= 0 and the total is exactly 1.
class ProbTable {
 public:
  ProbTable(std::vector<FiniteSpace> factors, std::vector<Rational> mass);

  // Build from sparse cells keyed by label tuples; omitted cells are zero.
  static ProbTable from_cells(
      std::vector<FiniteSpace> factors,
      const std::map<std::vector<std::string>, Rational>& cells);

  std::size_t arity() const { return factors_.size(); }
  const std::vector<FiniteSpace>& factors() const { return factors_; }
  const FiniteSpace& factor(std::size_t i) const { return factors_.at(i); }
  std::size_t cell_count() const { return mass_.size(); }

  const Rational& mass(std::size_t flat) const { return mass_.at(flat); }
  const Rational& mass(std::span<const std::size_t> cell) const;
  const std::vector<Rational>& dense() const { return mass_; }

  std::size_t flat_of(std::span<const std::size_t> cell) const;
  std::vector<std::size_t> cell_of(std::size_t flat) const;
  std::vector<std::string> cell_labels(std::size_t flat) const;

  // p(J) for a single-factor event J (mass of the cylinder over J).
  Rational event_mass(const Event& event) const;

  friend bool operator==(const ProbTable& a, const ProbTable& b) {
    return a.factors_ == b.factors_ && a.mass_ == b.mass_;
  }

 private:
  std::vector<FiniteSpace> factors_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> mass_;
};

// Marginal onto the given factors, which become the result's factors in the
// given order. Throws on an empty, duplicate, or out-of-range keep set.
ProbTable marginal(const ProbTable& p, const std::vector<std::size_t>& keep);

// Reorders factors by `order`, a permutation of [0, arity).
ProbTable permute_factors(const ProbTable& p, const std::vector<std::size_t>& order);

// The conditional probability of an event given the sigma-algebra generated
// by a set of conditioning factors: a [0,1]-valued function on conditioning
// cells, defined exactly on the cells of positive marginal mass.
struct CondTable {
  std::vector<std::size_t> cond_factors;
  // Keyed by label-index tuples over cond_factors; keys are the support.
  std::map<std::vector<std::size_t>, Rational> values;

  bool has_cell(const std::vector<std::size_t>& cell) const {
    return values.count(cell) > 0;
  }
  const Rational& at(const std::vector<std::size_t>& cell) const;
};

// f(z) = p(J x {z}) / p({z}) on every conditioning cell z of positive mass;
// zero-mass cells carry no value. Throws if J's factor lies inside the
// conditioning set or the conditioning set is empty.
CondTable conditional(const ProbTable& p, const Event& event,
                      const std::vector<std::size_t>& cond_factors);

// True iff the two tables have identical marginals on the named factors.
// The named factors must exist in both tables and carry equal spaces.
bool agrees_on(const ProbTable& p, const ProbTable& q,
               const std::vector<std::size_t>& factors);

// True iff r equals the marginal of p on the named factors.
bool is_extension(const ProbTable& p, const ProbTable& r,
                  const std::vector<std::size_t>& factors);

}  // namespace hvcanon
