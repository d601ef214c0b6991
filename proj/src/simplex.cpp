#include "hvcanon/simplex.hpp"

#include <stdexcept>

namespace hvcanon {

namespace {

void verify_result(const LinearSystem& system, const SimplexResult& result) {
  if (const auto* feasible = std::get_if<SimplexFeasible>(&result)) {
    const auto& w = feasible->solution;
    if (w.size() != system.cols) throw std::logic_error("simplex: solution size");
    for (const Rational& value : w) {
      if (value < 0) throw std::logic_error("simplex: negative solution entry");
    }
    for (std::size_t i = 0; i < system.rows; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < system.cols; ++j) {
        lhs += system.a[i][j] * w[j];
      }
      if (lhs != system.b[i]) throw std::logic_error("simplex: A w != b");
    }
    return;
  }
  const auto& y = std::get<SimplexInfeasible>(result).farkas;
  if (y.size() != system.rows) throw std::logic_error("simplex: certificate size");
  for (std::size_t j = 0; j < system.cols; ++j) {
    Rational dot = 0;
    for (std::size_t i = 0; i < system.rows; ++i) dot += y[i] * system.a[i][j];
    if (dot > 0) throw std::logic_error("simplex: certificate violates y^T A <= 0");
  }
  Rational value = 0;
  for (std::size_t i = 0; i < system.rows; ++i) value += y[i] * system.b[i];
  if (value <= 0) throw std::logic_error("simplex: certificate has y^T b <= 0");
}

}  // namespace

SimplexResult solve_equality_feasibility(const LinearSystem& system) {
  std::size_t m = system.rows;
  std::size_t n = system.cols;
  if (system.a.size() != m || system.b.size() != m) {
    throw std::invalid_argument("simplex: inconsistent system dimensions");
  }
  for (const auto& row : system.a) {
    if (row.size() != n) {
      throw std::invalid_argument("simplex: inconsistent row length");
    }
  }

  // Phase-one tableau over columns [original | artificial | rhs], with rows
  // sign-flipped so every right-hand side is nonnegative; minimize the sum
  // of artificials. sign[i] records the flip for certificate recovery.
  std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width));
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    sign[i] = system.b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign[i] * system.a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = sign[i] * system.b[i];
  }
  // Reduced-cost row: cost 1 on artificials, eliminated against the basis.
  std::vector<Rational>& obj = t[m];
  for (std::size_t j = 0; j < width; ++j) {
    for (std::size_t i = 0; i < m; ++i) obj[j] -= t[i][j];
    if (j >= n && j < n + m) obj[j] += 1;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t enter = width - 1;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width - 1) break;  // optimal

    // Leaving row: minimum ratio; ties by lowest basis label (Bland).
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      throw std::logic_error("simplex: phase one unbounded");
    }

    Rational pivot = t[leave][enter];
    for (std::size_t j = 0; j < width; ++j) t[leave][j] /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        t[i][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  // Phase-one optimum value is the negated objective-row rhs.
  Rational optimum = -obj[width - 1];
  SimplexResult result;
  if (optimum == 0) {
    std::vector<Rational> w(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) w[basis[i]] = t[i][width - 1];
    }
    result = SimplexFeasible{std::move(w)};
  } else {
    // Dual values from artificial reduced costs: y_i = 1 - r_i in the
    // flipped system, mapped back through the row signs. This y satisfies
    // y^T A <= 0 and y^T b = optimum > 0.
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = sign[i] * (Rational(1) - obj[n + i]);
    }
    result = SimplexInfeasible{std::move(y)};
  }
  verify_result(system, result);
  return result;
}

}  // namespace hvcanon
