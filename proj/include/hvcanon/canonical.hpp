#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"

namespace hvcanon {

// Half-open interval [lo, hi) with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// The left half [lo, (lo+hi)/2): contained in the input, exactly half its
// length. Iterating produces sub-events of any dyadic fraction of the
// original measure, witnessing that interval hidden spaces are atomless.
Interval interval_halve(const Interval& interval);

struct IntervalPiece {
  Interval interval;
  ProbTable kernel;  // conditional distribution over X_a x X_b x Y_a x Y_b

  friend bool operator==(const IntervalPiece& a, const IntervalPiece& b) {
    return a.interval == b.interval && a.kernel == b.kernel;
  }
};

// A hidden-variable model whose hidden state ranges over [0,1) with
// Lebesgue measure: finitely many disjoint rational-endpoint intervals
// covering [0,1), each carrying a conditional kernel over the observables.
// The induced measure of R x S x I is sum over pieces of
// len(piece intersect I) * kernel(R x S).
class IntervalHVModel {
 public:
  // Pieces may arrive in any order; they are sorted by left endpoint and
  // must then tile [0,1) exactly. Every kernel must live on the four given
  // spaces. Throws std::invalid_argument otherwise.
  IntervalHVModel(FiniteSpace outcomes_a, FiniteSpace outcomes_b,
                  FiniteSpace measurements_a, FiniteSpace measurements_b,
                  std::vector<IntervalPiece> pieces);

  const FiniteSpace& outcomes_a() const { return spaces_[0]; }
  const FiniteSpace& outcomes_b() const { return spaces_[1]; }
  const FiniteSpace& measurements_a() const { return spaces_[2]; }
  const FiniteSpace& measurements_b() const { return spaces_[3]; }
  const std::vector<IntervalPiece>& pieces() const { return pieces_; }

  // Marginal on the observables: sum of length-weighted kernels.
  ProbTable realized_table() const;
  EmpiricalModel realized_empirical() const;

  friend bool operator==(const IntervalHVModel& a, const IntervalHVModel& b) {
    return a.spaces_ == b.spaces_ && a.pieces_ == b.pieces_;
  }

 private:
  std::vector<FiniteSpace> spaces_;
  std::vector<IntervalPiece> pieces_;
};

// The measure-algebra isomorphism underlying canonicalization: each block
// of hidden states maps to a union of intervals of total length equal to
// the block's mass; images are disjoint and cover [0,1).
struct IsoMap {
  std::vector<std::pair<std::string, std::vector<Interval>>> images;

  // Total length of a block's image.
  Rational image_length(const std::string& block) const;
};

// Distribution of the hidden factor (its marginal).
ProbTable hv_distribution(const HVModel& p);

// Removes hidden states of zero mass; the rest keep their labels and order.
HVModel drop_null_hidden(const HVModel& p);

// One piece per positive-mass hidden state, consecutive intervals of length
// equal to its mass in storage order; each kernel is the conditional
// distribution of the observables given that state. Realization-equivalent
// to the input by construction.
IntervalHVModel atomless_lift(const HVModel& p);

// Partition of the hidden space grouping states with identical conditional
// observable profiles. Blocks are ordered by their lexicographically
// smallest member label. Requires every hidden state to have positive mass
// (apply drop_null_hidden first); throws std::invalid_argument otherwise.
Partition kernel_atoms(const HVModel& p);

struct CanonicalResult {
  IntervalHVModel model;
  IsoMap iso;
};

// Transforms a finite hidden-variable model into a realization-equivalent
// interval model: kernel-atom blocks become consecutive intervals (in block
// order) of length equal to block mass, each carrying the block's common
// conditional kernel. The returned IsoMap records block -> interval with
// image length equal to block mass.
CanonicalResult canonicalize(const HVModel& p);

// Replaces each piece by one hidden state of mass equal to its length
// (labels "seg0", "seg1", ... zero-padded so label order is piece order).
HVModel collapse(const IntervalHVModel& m);

// Property checks on an interval model: each piece acts as a conditioning
// atom weighted by its length, which is exactly the verdict of check_all on
// collapse(m).
std::map<HvProperty, PropertyReport> check_interval_properties(const IntervalHVModel& m);

}  // namespace hvcanon
