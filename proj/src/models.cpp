#include "hvcanon/models.hpp"

#include <stdexcept>
#include <utility>

namespace hvcanon {

namespace {

void require_arity(const ProbTable& table, std::size_t arity, const char* what) {
  if (table.arity() != arity) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(arity) + " factors, got " +
                                std::to_string(table.arity()));
  }
}

void require_observables_match(const HVModel& p, const EmpiricalModel& e) {
  for (std::size_t f : kObservableFactors) {
    if (!(p.table().factor(f) == e.table().factor(f))) {
      throw std::invalid_argument("observable spaces differ between models");
    }
  }
}

// Replaces one factor of the table by its block space, summing member mass.
ProbTable coarsen_factor(const ProbTable& p, std::size_t factor,
                         const Partition& partition) {
  if (!(partition.base() == p.factor(factor))) {
    throw std::invalid_argument("partition base does not match the model factor");
  }
  std::vector<FiniteSpace> factors;
  factors.reserve(p.arity());
  for (std::size_t f = 0; f < p.arity(); ++f) {
    factors.push_back(f == factor ? partition.block_space() : p.factor(f));
  }
  std::map<std::vector<std::string>, Rational> cells;
  for (std::size_t flat = 0; flat < p.cell_count(); ++flat) {
    const Rational& m = p.mass(flat);
    if (m == 0) continue;
    auto cell = p.cell_of(flat);
    std::vector<std::string> key(p.arity());
    for (std::size_t f = 0; f < p.arity(); ++f) {
      key[f] = f == factor ? partition.block_name(partition.block_of(cell[f]))
                           : p.factor(f).label(cell[f]);
    }
    cells[key] += m;
  }
  return ProbTable::from_cells(std::move(factors), cells);
}

}  // namespace

EmpiricalModel::EmpiricalModel(ProbTable table) : table_(std::move(table)) {
  require_arity(table_, 4, "EmpiricalModel");
}

EmpiricalModel EmpiricalModel::from_cells(
    FiniteSpace outcomes_a, FiniteSpace outcomes_b, FiniteSpace measurements_a,
    FiniteSpace measurements_b,
    const std::map<std::vector<std::string>, Rational>& cells) {
  std::vector<FiniteSpace> factors = {std::move(outcomes_a), std::move(outcomes_b),
                                      std::move(measurements_a),
                                      std::move(measurements_b)};
  return EmpiricalModel(ProbTable::from_cells(std::move(factors), cells));
}

ProbTable EmpiricalModel::context_distribution() const {
  return marginal(table_, {factor::kMeasureA, factor::kMeasureB});
}

HVModel::HVModel(ProbTable table) : table_(std::move(table)) {
  require_arity(table_, 5, "HVModel");
}

HVModel HVModel::from_cells(
    FiniteSpace outcomes_a, FiniteSpace outcomes_b, FiniteSpace measurements_a,
    FiniteSpace measurements_b, FiniteSpace hidden,
    const std::map<std::vector<std::string>, Rational>& cells) {
  std::vector<FiniteSpace> factors = {std::move(outcomes_a), std::move(outcomes_b),
                                      std::move(measurements_a),
                                      std::move(measurements_b), std::move(hidden)};
  return HVModel(ProbTable::from_cells(std::move(factors), cells));
}

EmpiricalModel realized_empirical(const HVModel& p) {
  return EmpiricalModel(marginal(p.table(), kObservableFactors));
}

bool realizes(const HVModel& p, const EmpiricalModel& e) {
  require_observables_match(p, e);
  return realized_empirical(p) == e;
}

bool realization_equivalent(const HVModel& p, const HVModel& q) {
  return agrees_on(p.table(), q.table(), kObservableFactors);
}

HVModel restrict_model(const HVModel& p, const RestrictionSpec& spec) {
  ProbTable coarse = coarsen_factor(p.table(), factor::kOutcomeA, spec.blocks_a);
  coarse = coarsen_factor(coarse, factor::kOutcomeB, spec.blocks_b);
  return HVModel(std::move(coarse));
}

EmpiricalModel restrict_model(const EmpiricalModel& e, const RestrictionSpec& spec) {
  ProbTable coarse = coarsen_factor(e.table(), factor::kOutcomeA, spec.blocks_a);
  coarse = coarsen_factor(coarse, factor::kOutcomeB, spec.blocks_b);
  return EmpiricalModel(std::move(coarse));
}

}  // namespace hvcanon
