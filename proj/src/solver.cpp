#include "hvcanon/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "hvcanon/properties.hpp"

namespace hvcanon {

std::string DetStrategy::name() const {
  std::string out = "a";
  for (std::size_t y = 0; y < f_a.size(); ++y) {
    if (y > 0) out += '.';
    out += std::to_string(f_a[y]);
  }
  out += 'b';
  for (std::size_t y = 0; y < f_b.size(); ++y) {
    if (y > 0) out += '.';
    out += std::to_string(f_b[y]);
  }
  return out;
}

std::vector<DetStrategy> enumerate_strategies(const EmpiricalModel& e) {
  std::size_t na = e.outcomes_a().size(), nya = e.measurements_a().size();
  std::size_t nb = e.outcomes_b().size(), nyb = e.measurements_b().size();
  std::size_t cap = enumeration_caps().strategy_cap;
  std::size_t count = 1;
  for (std::size_t y = 0; y < nya; ++y) {
    if (count > cap / na) throw std::runtime_error("strategy cap exceeded");
    count *= na;
  }
  for (std::size_t y = 0; y < nyb; ++y) {
    if (count > cap / nb) throw std::runtime_error("strategy cap exceeded");
    count *= nb;
  }

  std::vector<DetStrategy> strategies;
  strategies.reserve(count);
  DetStrategy s;
  s.f_a.assign(nya, 0);
  s.f_b.assign(nyb, 0);
  for (;;) {
    strategies.push_back(s);
    // Odometer: advance f_b (last measurement fastest), then f_a.
    std::size_t y = nyb;
    while (y > 0 && s.f_b[y - 1] + 1 == nb) s.f_b[--y] = 0;
    if (y > 0) {
      ++s.f_b[y - 1];
      continue;
    }
    y = nya;
    while (y > 0 && s.f_a[y - 1] + 1 == na) s.f_a[--y] = 0;
    if (y == 0) break;
    ++s.f_a[y - 1];
  }
  return strategies;
}

namespace {

// One constraint row per (positive-mass context, outcome pair), in context
// then outcome order, plus a final normalization row.
struct LocalProgram {
  std::vector<std::pair<std::size_t, std::size_t>> contexts;  // (ya,yb)
  std::vector<std::array<std::size_t, 4>> row_cells;          // (xa,xb,ya,yb)
  LinearSystem system;
  std::vector<std::size_t> column_strategy;  // column -> strategy index
};

LocalProgram build_program(const EmpiricalModel& e,
                           const std::vector<DetStrategy>& strategies) {
  LocalProgram prog;
  std::size_t na = e.outcomes_a().size(), nb = e.outcomes_b().size();
  ProbTable context = e.context_distribution();
  for (std::size_t ya = 0; ya < e.measurements_a().size(); ++ya) {
    for (std::size_t yb = 0; yb < e.measurements_b().size(); ++yb) {
      if (context.mass(std::vector<std::size_t>{ya, yb}) > 0) {
        prog.contexts.emplace_back(ya, yb);
      }
    }
  }
  if (prog.contexts.empty()) {
    throw std::invalid_argument("solve_local: no positive-mass context");
  }

  // Deduplicate strategies by their behavior on the positive contexts.
  std::vector<std::vector<std::size_t>> behaviors;  // per column, cell per context
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    std::vector<std::size_t> behavior;
    behavior.reserve(prog.contexts.size());
    for (auto [ya, yb] : prog.contexts) {
      behavior.push_back(strategies[s].f_a[ya] * nb + strategies[s].f_b[yb]);
    }
    if (std::find(behaviors.begin(), behaviors.end(), behavior) ==
        behaviors.end()) {
      behaviors.push_back(std::move(behavior));
      prog.column_strategy.push_back(s);
    }
  }

  std::size_t rows = prog.contexts.size() * na * nb + 1;
  std::size_t cols = prog.column_strategy.size();
  prog.system.rows = rows;
  prog.system.cols = cols;
  prog.system.a.assign(rows, std::vector<Rational>(cols, Rational(0)));
  prog.system.b.assign(rows, Rational(0));
  std::size_t row = 0;
  for (std::size_t c = 0; c < prog.contexts.size(); ++c) {
    auto [ya, yb] = prog.contexts[c];
    Rational cmass = context.mass(std::vector<std::size_t>{ya, yb});
    for (std::size_t xa = 0; xa < na; ++xa) {
      for (std::size_t xb = 0; xb < nb; ++xb) {
        prog.row_cells.push_back({xa, xb, ya, yb});
        prog.system.b[row] =
            e.table().mass(std::vector<std::size_t>{xa, xb, ya, yb}) / cmass;
        for (std::size_t col = 0; col < cols; ++col) {
          if (behaviors[col][c] == xa * nb + xb) prog.system.a[row][col] = 1;
        }
        ++row;
      }
    }
  }
  for (std::size_t col = 0; col < cols; ++col) prog.system.a[row][col] = 1;
  prog.system.b[row] = 1;
  return prog;
}

HVModel reconstruct_model(const EmpiricalModel& e,
                          const std::vector<std::pair<DetStrategy, Rational>>& weights) {
  std::vector<std::string> labels;
  for (const auto& [strategy, weight] : weights) labels.push_back(strategy.name());
  FiniteSpace hidden(labels);
  ProbTable context = e.context_distribution();
  std::map<std::vector<std::string>, Rational> cells;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    const DetStrategy& strategy = weights[s].first;
    for (std::size_t ya = 0; ya < e.measurements_a().size(); ++ya) {
      for (std::size_t yb = 0; yb < e.measurements_b().size(); ++yb) {
        Rational mass =
            context.mass(std::vector<std::size_t>{ya, yb}) * weights[s].second;
        if (mass == 0) continue;
        cells[{e.outcomes_a().label(strategy.f_a[ya]),
               e.outcomes_b().label(strategy.f_b[yb]),
               e.measurements_a().label(ya), e.measurements_b().label(yb),
               labels[s]}] += mass;
      }
    }
  }
  return HVModel::from_cells(e.outcomes_a(), e.outcomes_b(), e.measurements_a(),
                             e.measurements_b(), hidden, cells);
}

}  // namespace

FeasibilityResult solve_local(const EmpiricalModel& e) {
  std::vector<DetStrategy> strategies = enumerate_strategies(e);
  LocalProgram prog = build_program(e, strategies);
  SimplexResult lp = solve_equality_feasibility(prog.system);

  FeasibilityResult result;
  if (const auto* feasible = std::get_if<SimplexFeasible>(&lp)) {
    result.feasible = true;
    for (std::size_t col = 0; col < prog.system.cols; ++col) {
      if (feasible->solution[col] == 0) continue;
      result.weights.emplace_back(strategies[prog.column_strategy[col]],
                                  feasible->solution[col]);
    }
    HVModel model = reconstruct_model(e, result.weights);
    if (!realizes(model, e) || !check_lambda_independence(model).holds ||
        !check_locality(model).holds || !check_weak_determinism(model).holds) {
      throw std::logic_error("solve_local: reconstructed model failed re-verification");
    }
    result.model = std::move(model);
    return result;
  }

  const auto& y = std::get<SimplexInfeasible>(lp).farkas;
  Certificate cert;
  // The normalization row's multiplier shifts both sides equally, so the
  // published functional uses only the cell rows: value_on_e exceeds every
  // strategy's value by at least y_norm's margin.
  for (std::size_t row = 0; row + 1 < prog.system.rows; ++row) {
    if (y[row] != 0) cert.cell_coeffs.emplace(prog.row_cells[row], y[row]);
  }
  cert.value_on_e = 0;
  for (std::size_t row = 0; row + 1 < prog.system.rows; ++row) {
    cert.value_on_e += y[row] * prog.system.b[row];
  }
  bool first = true;
  for (std::size_t col = 0; col < prog.system.cols; ++col) {
    Rational value = 0;
    for (std::size_t row = 0; row + 1 < prog.system.rows; ++row) {
      value += y[row] * prog.system.a[row][col];
    }
    if (first || value > cert.strategy_max) cert.strategy_max = value;
    first = false;
  }
  if (cert.value_on_e <= cert.strategy_max) {
    throw std::logic_error("solve_local: certificate failed separation check");
  }
  result.feasible = false;
  result.certificate = std::move(cert);
  return result;
}

namespace {

Rational outcome_sign(const FiniteSpace& outcomes, std::size_t index) {
  const std::string& first = outcomes.label(0);
  const std::string& second = outcomes.label(1);
  auto is_plus = [](const std::string& s) { return s == "1" || s == "+1"; };
  auto is_minus = [](const std::string& s) { return s == "-1"; };
  if ((is_plus(first) && is_minus(second)) || (is_minus(first) && is_plus(second))) {
    return is_plus(outcomes.label(index)) ? Rational(1) : Rational(-1);
  }
  return index == 0 ? Rational(1) : Rational(-1);
}

Rational symmetrized_max(const std::vector<Rational>& correlators) {
  Rational total = correlators[0] + correlators[1] + correlators[2] + correlators[3];
  Rational best;
  for (std::size_t k = 0; k < 4; ++k) {
    Rational s = total - 2 * correlators[k];
    if (s < 0) s = -s;
    if (k == 0 || s > best) best = s;
  }
  return best;
}

}  // namespace

ChshResult chsh_value(const EmpiricalModel& e) {
  if (e.outcomes_a().size() != 2 || e.outcomes_b().size() != 2 ||
      e.measurements_a().size() != 2 || e.measurements_b().size() != 2) {
    throw std::invalid_argument(
        "chsh_value requires two outcomes and two measurements per side");
  }
  ProbTable context = e.context_distribution();
  ChshResult result;
  for (std::size_t ya = 0; ya < 2; ++ya) {
    for (std::size_t yb = 0; yb < 2; ++yb) {
      Rational cmass = context.mass(std::vector<std::size_t>{ya, yb});
      if (cmass == 0) {
        throw std::invalid_argument("chsh_value: context has zero mass");
      }
      Rational corr = 0;
      for (std::size_t xa = 0; xa < 2; ++xa) {
        for (std::size_t xb = 0; xb < 2; ++xb) {
          corr += outcome_sign(e.outcomes_a(), xa) *
                  outcome_sign(e.outcomes_b(), xb) *
                  e.table().mass(std::vector<std::size_t>{xa, xb, ya, yb}) / cmass;
        }
      }
      result.correlators.push_back(corr);
    }
  }
  result.value = result.correlators[0] + result.correlators[1] +
                 result.correlators[2] - result.correlators[3];
  result.max_abs = symmetrized_max(result.correlators);
  return result;
}

Rational chsh_strategy_bound() {
  Rational best;
  bool first = true;
  // Each strategy fixes a sign per (party, measurement).
  for (int sa0 = -1; sa0 <= 1; sa0 += 2) {
    for (int sa1 = -1; sa1 <= 1; sa1 += 2) {
      for (int sb0 = -1; sb0 <= 1; sb0 += 2) {
        for (int sb1 = -1; sb1 <= 1; sb1 += 2) {
          std::vector<Rational> correlators = {
              Rational(sa0 * sb0), Rational(sa0 * sb1), Rational(sa1 * sb0),
              Rational(sa1 * sb1)};
          Rational s = symmetrized_max(correlators);
          if (first || s > best) best = s;
          first = false;
        }
      }
    }
  }
  return best;
}

}  // namespace hvcanon
