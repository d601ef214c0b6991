#include "hvcanon/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hvcanon {

Interval interval_halve(const Interval& interval) {
  if (!(interval.lo < interval.hi)) {
    throw std::invalid_argument("interval_halve: empty interval");
  }
  return Interval{interval.lo, (interval.lo + interval.hi) / 2};
}

IntervalHVModel::IntervalHVModel(FiniteSpace outcomes_a, FiniteSpace outcomes_b,
                                 FiniteSpace measurements_a,
                                 FiniteSpace measurements_b,
                                 std::vector<IntervalPiece> pieces)
    : spaces_{std::move(outcomes_a), std::move(outcomes_b),
              std::move(measurements_a), std::move(measurements_b)},
      pieces_(std::move(pieces)) {
  if (pieces_.empty()) {
    throw std::invalid_argument("IntervalHVModel requires at least one piece");
  }
  for (const IntervalPiece& piece : pieces_) {
    if (!(piece.interval.lo < piece.interval.hi)) {
      throw std::invalid_argument("IntervalHVModel piece has an empty interval");
    }
    if (piece.kernel.arity() != 4) {
      throw std::invalid_argument("IntervalHVModel kernel must have four factors");
    }
    for (std::size_t f = 0; f < 4; ++f) {
      if (!(piece.kernel.factor(f) == spaces_[f])) {
        throw std::invalid_argument("IntervalHVModel kernel spaces mismatch");
      }
    }
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const IntervalPiece& a, const IntervalPiece& b) {
              return a.interval.lo < b.interval.lo;
            });
  Rational cursor = 0;
  for (const IntervalPiece& piece : pieces_) {
    if (piece.interval.lo != cursor) {
      throw std::invalid_argument("IntervalHVModel pieces do not tile [0,1)");
    }
    cursor = piece.interval.hi;
  }
  if (cursor != 1) {
    throw std::invalid_argument("IntervalHVModel pieces do not cover [0,1)");
  }
}

ProbTable IntervalHVModel::realized_table() const {
  std::vector<Rational> mass(pieces_[0].kernel.cell_count(), Rational(0));
  for (const IntervalPiece& piece : pieces_) {
    Rational length = piece.interval.length();
    for (std::size_t flat = 0; flat < mass.size(); ++flat) {
      mass[flat] += length * piece.kernel.mass(flat);
    }
  }
  return ProbTable(spaces_, std::move(mass));
}

EmpiricalModel IntervalHVModel::realized_empirical() const {
  return EmpiricalModel(realized_table());
}

Rational IsoMap::image_length(const std::string& block) const {
  for (const auto& [name, intervals] : images) {
    if (name != block) continue;
    Rational total = 0;
    for (const Interval& interval : intervals) total += interval.length();
    return total;
  }
  throw std::invalid_argument("IsoMap: unknown block " + block);
}

ProbTable hv_distribution(const HVModel& p) {
  return marginal(p.table(), {factor::kHidden});
}

HVModel drop_null_hidden(const HVModel& p) {
  ProbTable ell = hv_distribution(p);
  std::vector<std::string> kept;
  for (std::size_t l = 0; l < p.hidden().size(); ++l) {
    if (ell.mass(l) > 0) kept.push_back(p.hidden().label(l));
  }
  if (kept.size() == p.hidden().size()) return p;
  std::map<std::vector<std::string>, Rational> cells;
  const ProbTable& t = p.table();
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    if (t.mass(flat) == 0) continue;
    cells[t.cell_labels(flat)] = t.mass(flat);
  }
  return HVModel::from_cells(p.outcomes_a(), p.outcomes_b(), p.measurements_a(),
                             p.measurements_b(), FiniteSpace(kept), cells);
}

namespace {

// Conditional distribution over the observables given one hidden state,
// as a dense vector in observable flat order. Requires positive mass.
std::vector<Rational> hidden_slice(const HVModel& p, std::size_t l,
                                   const Rational& state_mass) {
  const ProbTable& t = p.table();
  std::size_t cells = t.cell_count() / p.hidden().size();
  std::vector<Rational> slice(cells, Rational(0));
  // The hidden factor is least significant in flat order, so observable
  // flat index = table flat index / |hidden|.
  std::size_t nl = p.hidden().size();
  for (std::size_t flat = l; flat < t.cell_count(); flat += nl) {
    slice[flat / nl] = t.mass(flat) / state_mass;
  }
  return slice;
}

std::vector<FiniteSpace> observable_spaces(const HVModel& p) {
  return {p.outcomes_a(), p.outcomes_b(), p.measurements_a(), p.measurements_b()};
}

}  // namespace

IntervalHVModel atomless_lift(const HVModel& p) {
  HVModel q = drop_null_hidden(p);
  ProbTable ell = hv_distribution(q);
  std::vector<IntervalPiece> pieces;
  Rational cursor = 0;
  for (std::size_t l = 0; l < q.hidden().size(); ++l) {
    Rational next = cursor + ell.mass(l);
    pieces.push_back(IntervalPiece{
        Interval{cursor, next},
        ProbTable(observable_spaces(q), hidden_slice(q, l, ell.mass(l)))});
    cursor = next;
  }
  return IntervalHVModel(q.outcomes_a(), q.outcomes_b(), q.measurements_a(),
                         q.measurements_b(), std::move(pieces));
}

Partition kernel_atoms(const HVModel& p) {
  ProbTable ell = hv_distribution(p);
  std::size_t nl = p.hidden().size();
  std::vector<std::vector<Rational>> profiles(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    if (ell.mass(l) == 0) {
      throw std::invalid_argument(
          "kernel_atoms: hidden state of zero mass (drop null states first)");
    }
    profiles[l] = hidden_slice(p, l, ell.mass(l));
  }
  // Group states by identical profile, first occurrence order.
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::size_t> representative;
  for (std::size_t l = 0; l < nl; ++l) {
    bool placed = false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (profiles[representative[b]] == profiles[l]) {
        blocks[b].push_back(p.hidden().label(l));
        placed = true;
        break;
      }
    }
    if (!placed) {
      blocks.push_back({p.hidden().label(l)});
      representative.push_back(l);
    }
  }
  // Order blocks by their lexicographically smallest member label.
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              return *std::min_element(a.begin(), a.end()) <
                     *std::min_element(b.begin(), b.end());
            });
  return Partition(p.hidden(), std::move(blocks));
}

CanonicalResult canonicalize(const HVModel& p) {
  HVModel q = drop_null_hidden(p);
  Partition atoms = kernel_atoms(q);
  ProbTable ell = hv_distribution(q);
  std::size_t nl = q.hidden().size();

  std::vector<IntervalPiece> pieces;
  IsoMap iso;
  Rational cursor = 0;
  std::size_t observable_cells = q.table().cell_count() / nl;
  for (std::size_t b = 0; b < atoms.block_count(); ++b) {
    Rational block_mass = 0;
    for (std::size_t l : atoms.blocks()[b]) block_mass += ell.mass(l);
    std::vector<Rational> kernel(observable_cells, Rational(0));
    for (std::size_t l : atoms.blocks()[b]) {
      const ProbTable& t = q.table();
      for (std::size_t flat = l; flat < t.cell_count(); flat += nl) {
        kernel[flat / nl] += t.mass(flat) / block_mass;
      }
    }
    Rational next = cursor + block_mass;
    Interval image{cursor, next};
    pieces.push_back(
        IntervalPiece{image, ProbTable(observable_spaces(q), std::move(kernel))});
    iso.images.emplace_back(atoms.block_name(b), std::vector<Interval>{image});
    cursor = next;
  }
  return CanonicalResult{
      IntervalHVModel(q.outcomes_a(), q.outcomes_b(), q.measurements_a(),
                      q.measurements_b(), std::move(pieces)),
      std::move(iso)};
}

HVModel collapse(const IntervalHVModel& m) {
  std::size_t count = m.pieces().size();
  std::size_t width = std::to_string(count - 1).size();
  std::vector<std::string> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    labels[i] = "seg" + std::string(width - digits.size(), '0') + digits;
  }
  FiniteSpace hidden(labels);
  std::map<std::vector<std::string>, Rational> cells;
  for (std::size_t i = 0; i < count; ++i) {
    const IntervalPiece& piece = m.pieces()[i];
    Rational length = piece.interval.length();
    for (std::size_t flat = 0; flat < piece.kernel.cell_count(); ++flat) {
      const Rational& k = piece.kernel.mass(flat);
      if (k == 0) continue;
      std::vector<std::string> key = piece.kernel.cell_labels(flat);
      key.push_back(labels[i]);
      cells[key] = length * k;
    }
  }
  return HVModel::from_cells(m.outcomes_a(), m.outcomes_b(), m.measurements_a(),
                             m.measurements_b(), hidden, cells);
}

std::map<HvProperty, PropertyReport> check_interval_properties(
    const IntervalHVModel& m) {
  return check_all(collapse(m));
}

}  // namespace hvcanon
