#include "hvcanon/table.hpp"

#include <algorithm>
#include <stdexcept>

namespace hvcanon {

Event Event::from_labels(const FiniteSpace& space, std::size_t factor,
                         const std::vector<std::string>& labels) {
  Event event;
  event.factor = factor;
  event.labels.reserve(labels.size());
  for (const std::string& label : labels) {
    event.labels.push_back(space.index_of(label));
  }
  std::sort(event.labels.begin(), event.labels.end());
  event.labels.erase(std::unique(event.labels.begin(), event.labels.end()),
                     event.labels.end());
  return event;
}

Event Event::full(const FiniteSpace& space, std::size_t factor) {
  Event event;
  event.factor = factor;
  event.labels.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) event.labels[i] = i;
  return event;
}

bool Event::contains(std::size_t label_index) const {
  return std::binary_search(labels.begin(), labels.end(), label_index);
}

namespace {

std::vector<std::size_t> make_strides(const std::vector<FiniteSpace>& factors) {
  std::vector<std::size_t> strides(factors.size());
  std::size_t stride = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= factors[i].size();
  }
  return strides;
}

void validate_event(const ProbTable& p, const Event& event) {
  if (event.factor >= p.arity()) {
    throw std::invalid_argument("event factor out of range");
  }
  for (std::size_t label : event.labels) {
    if (label >= p.factor(event.factor).size()) {
      throw std::invalid_argument("event label index out of range");
    }
  }
}

void validate_factor_set(const ProbTable& p, const std::vector<std::size_t>& factors,
                         const char* what) {
  if (factors.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty factor set");
  }
  std::vector<bool> seen(p.arity(), false);
  for (std::size_t f : factors) {
    if (f >= p.arity()) {
      throw std::invalid_argument(std::string(what) + ": factor index out of range");
    }
    if (seen[f]) {
      throw std::invalid_argument(std::string(what) + ": duplicate factor index");
    }
    seen[f] = true;
  }
}

}  // namespace

ProbTable::ProbTable(std::vector<FiniteSpace> factors, std::vector<Rational> mass)
    : factors_(std::move(factors)), mass_(std::move(mass)) {
  if (factors_.empty()) {
    throw std::invalid_argument("ProbTable requires at least one factor");
  }
  strides_ = make_strides(factors_);
  std::size_t cells = strides_[0] * factors_[0].size();
  if (mass_.size() != cells) {
    throw std::invalid_argument("ProbTable mass vector has wrong size");
  }
  Rational total = 0;
  for (const Rational& m : mass_) {
    if (m < 0) {
      throw std::invalid_argument("ProbTable mass is negative");
    }
    total += m;
  }
  if (total != 1) {
    throw std::invalid_argument("ProbTable total mass is " + format_rational(total) +
                                ", expected 1/1");
  }
}

ProbTable ProbTable::from_cells(
    std::vector<FiniteSpace> factors,
    const std::map<std::vector<std::string>, Rational>& cells) {
  if (factors.empty()) {
    throw std::invalid_argument("ProbTable requires at least one factor");
  }
  auto strides = make_strides(factors);
  std::size_t count = strides[0] * factors[0].size();
  std::vector<Rational> mass(count, Rational(0));
  for (const auto& [key, value] : cells) {
    if (key.size() != factors.size()) {
      throw std::invalid_argument("cell key arity mismatch");
    }
    std::size_t flat = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      flat += strides[f] * factors[f].index_of(key[f]);
    }
    mass[flat] = value;
  }
  return ProbTable(std::move(factors), std::move(mass));
}

const Rational& ProbTable::mass(std::span<const std::size_t> cell) const {
  return mass_[flat_of(cell)];
}

std::size_t ProbTable::flat_of(std::span<const std::size_t> cell) const {
  if (cell.size() != factors_.size()) {
    throw std::invalid_argument("cell arity mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t f = 0; f < cell.size(); ++f) {
    if (cell[f] >= factors_[f].size()) {
      throw std::invalid_argument("cell label index out of range");
    }
    flat += strides_[f] * cell[f];
  }
  return flat;
}

std::vector<std::size_t> ProbTable::cell_of(std::size_t flat) const {
  std::vector<std::size_t> cell(factors_.size());
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    cell[f] = (flat / strides_[f]) % factors_[f].size();
  }
  return cell;
}

std::vector<std::string> ProbTable::cell_labels(std::size_t flat) const {
  auto cell = cell_of(flat);
  std::vector<std::string> labels(cell.size());
  for (std::size_t f = 0; f < cell.size(); ++f) {
    labels[f] = factors_[f].label(cell[f]);
  }
  return labels;
}

Rational ProbTable::event_mass(const Event& event) const {
  validate_event(*this, event);
  Rational total = 0;
  for (std::size_t flat = 0; flat < mass_.size(); ++flat) {
    std::size_t coord = (flat / strides_[event.factor]) % factors_[event.factor].size();
    if (event.contains(coord)) total += mass_[flat];
  }
  return total;
}

ProbTable marginal(const ProbTable& p, const std::vector<std::size_t>& keep) {
  validate_factor_set(p, keep, "marginal");
  std::vector<FiniteSpace> factors;
  factors.reserve(keep.size());
  for (std::size_t f : keep) factors.push_back(p.factor(f));
  auto strides = make_strides(factors);
  std::size_t count = strides[0] * factors[0].size();
  std::vector<Rational> mass(count, Rational(0));
  for (std::size_t flat = 0; flat < p.cell_count(); ++flat) {
    const Rational& m = p.mass(flat);
    if (m == 0) continue;
    auto cell = p.cell_of(flat);
    std::size_t out = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      out += strides[i] * cell[keep[i]];
    }
    mass[out] += m;
  }
  return ProbTable(std::move(factors), std::move(mass));
}

ProbTable permute_factors(const ProbTable& p, const std::vector<std::size_t>& order) {
  if (order.size() != p.arity()) {
    throw std::invalid_argument("permute_factors: order must cover all factors");
  }
  return marginal(p, order);
}

const Rational& CondTable::at(const std::vector<std::size_t>& cell) const {
  auto it = values.find(cell);
  if (it == values.end()) {
    throw std::invalid_argument("conditional value requested on a zero-mass cell");
  }
  return it->second;
}

CondTable conditional(const ProbTable& p, const Event& event,
                      const std::vector<std::size_t>& cond_factors) {
  validate_event(p, event);
  validate_factor_set(p, cond_factors, "conditional");
  for (std::size_t f : cond_factors) {
    if (f == event.factor) {
      throw std::invalid_argument("conditional: event factor lies in the conditioning set");
    }
  }
  std::map<std::vector<std::size_t>, Rational> cell_mass;
  std::map<std::vector<std::size_t>, Rational> joint_mass;
  for (std::size_t flat = 0; flat < p.cell_count(); ++flat) {
    const Rational& m = p.mass(flat);
    if (m == 0) continue;
    auto cell = p.cell_of(flat);
    std::vector<std::size_t> key(cond_factors.size());
    for (std::size_t i = 0; i < cond_factors.size(); ++i) key[i] = cell[cond_factors[i]];
    cell_mass[key] += m;
    if (event.contains(cell[event.factor])) joint_mass[key] += m;
  }
  CondTable result;
  result.cond_factors = cond_factors;
  for (const auto& [key, denom] : cell_mass) {
    auto it = joint_mass.find(key);
    Rational num = it == joint_mass.end() ? Rational(0) : it->second;
    result.values.emplace(key, num / denom);
  }
  return result;
}

bool agrees_on(const ProbTable& p, const ProbTable& q,
               const std::vector<std::size_t>& factors) {
  validate_factor_set(p, factors, "agrees_on");
  validate_factor_set(q, factors, "agrees_on");
  for (std::size_t f : factors) {
    if (!(p.factor(f) == q.factor(f))) {
      throw std::invalid_argument("agrees_on: factor spaces differ");
    }
  }
  return marginal(p, factors) == marginal(q, factors);
}

bool is_extension(const ProbTable& p, const ProbTable& r,
                  const std::vector<std::size_t>& factors) {
  validate_factor_set(p, factors, "is_extension");
  if (r.arity() != factors.size()) {
    throw std::invalid_argument("is_extension: arity mismatch");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(r.factor(i) == p.factor(factors[i]))) {
      throw std::invalid_argument("is_extension: factor spaces differ");
    }
  }
  return marginal(p, factors) == r;
}

}  // namespace hvcanon
