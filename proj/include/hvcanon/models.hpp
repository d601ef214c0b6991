#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hvcanon/table.hpp"

namespace hvcanon {

// Factor positions shared by every model table, in storage order.
namespace factor {
inline constexpr std::size_t kOutcomeA = 0;
inline constexpr std::size_t kOutcomeB = 1;
inline constexpr std::size_t kMeasureA = 2;
inline constexpr std::size_t kMeasureB = 3;
inline constexpr std::size_t kHidden = 4;  // hidden-variable models only
}  // namespace factor

inline const std::vector<std::size_t> kObservableFactors = {
    factor::kOutcomeA, factor::kOutcomeB, factor::kMeasureA, factor::kMeasureB};

// A two-party experiment's observable statistics: a joint distribution over
// (outcome_a, outcome_b, measurement_a, measurement_b).
class EmpiricalModel {
 public:
  explicit EmpiricalModel(ProbTable table);

  static EmpiricalModel from_cells(
      FiniteSpace outcomes_a, FiniteSpace outcomes_b, FiniteSpace measurements_a,
      FiniteSpace measurements_b,
      const std::map<std::vector<std::string>, Rational>& cells);

  const ProbTable& table() const { return table_; }
  const FiniteSpace& outcomes_a() const { return table_.factor(factor::kOutcomeA); }
  const FiniteSpace& outcomes_b() const { return table_.factor(factor::kOutcomeB); }
  const FiniteSpace& measurements_a() const { return table_.factor(factor::kMeasureA); }
  const FiniteSpace& measurements_b() const { return table_.factor(factor::kMeasureB); }

  // Distribution of the measurement pair (marginal on the two Y factors).
  ProbTable context_distribution() const;

  friend bool operator==(const EmpiricalModel& a, const EmpiricalModel& b) {
    return a.table_ == b.table_;
  }

 private:
  ProbTable table_;
};

// A hidden-variable model: joint distribution over
// (outcome_a, outcome_b, measurement_a, measurement_b, hidden state).
class HVModel {
 public:
  explicit HVModel(ProbTable table);

  static HVModel from_cells(
      FiniteSpace outcomes_a, FiniteSpace outcomes_b, FiniteSpace measurements_a,
      FiniteSpace measurements_b, FiniteSpace hidden,
      const std::map<std::vector<std::string>, Rational>& cells);

  const ProbTable& table() const { return table_; }
  const FiniteSpace& outcomes_a() const { return table_.factor(factor::kOutcomeA); }
  const FiniteSpace& outcomes_b() const { return table_.factor(factor::kOutcomeB); }
  const FiniteSpace& measurements_a() const { return table_.factor(factor::kMeasureA); }
  const FiniteSpace& measurements_b() const { return table_.factor(factor::kMeasureB); }
  const FiniteSpace& hidden() const { return table_.factor(factor::kHidden); }

  friend bool operator==(const HVModel& a, const HVModel& b) {
    return a.table_ == b.table_;
  }

 private:
  ProbTable table_;
};

// Coarsening of the two outcome factors; measurements and the hidden
// factor are never coarsened.
struct RestrictionSpec {
  Partition blocks_a;
  Partition blocks_b;
};

// The observable statistics induced by a hidden-variable model.
EmpiricalModel realized_empirical(const HVModel& p);

// True iff e equals the marginal of p on the observable factors.
// Throws if the observable spaces differ.
bool realizes(const HVModel& p, const EmpiricalModel& e);

// True iff the two models induce the same observable statistics.
bool realization_equivalent(const HVModel& p, const HVModel& q);

// Merge outcome labels blockwise; block mass is the sum of member masses.
// Throws if the partitions' bases do not match the model's outcome spaces.
HVModel restrict_model(const HVModel& p, const RestrictionSpec& spec);
EmpiricalModel restrict_model(const EmpiricalModel& e, const RestrictionSpec& spec);

}  // namespace hvcanon
