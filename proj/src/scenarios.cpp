#include "hvcanon/scenarios.hpp"

namespace hvcanon {

namespace {

const Rational kHalf(1, 2);

FiniteSpace binary_x() { return FiniteSpace({"x0", "x1"}); }
FiniteSpace single_m() { return FiniteSpace({"m0"}); }

}  // namespace

HVModel scenario_det() {
  return HVModel::from_cells(binary_x(), binary_x(), single_m(), single_m(),
                             FiniteSpace({"l0"}),
                             {{{"x0", "x0", "m0", "m0", "l0"}, Rational(1)}});
}

HVModel scenario_coin() {
  return HVModel::from_cells(binary_x(), binary_x(), single_m(), single_m(),
                             FiniteSpace({"l0", "l1"}),
                             {{{"x0", "x0", "m0", "m0", "l0"}, kHalf},
                              {{"x1", "x1", "m0", "m0", "l1"}, kHalf}});
}

HVModel scenario_signal() {
  return HVModel::from_cells(binary_x(), FiniteSpace({"x0"}), single_m(),
                             FiniteSpace({"m0", "m1"}), FiniteSpace({"l0"}),
                             {{{"x0", "x0", "m0", "m0", "l0"}, kHalf},
                              {{"x1", "x0", "m0", "m1", "l0"}, kHalf}});
}

HVModel scenario_ldep() {
  return HVModel::from_cells(FiniteSpace({"x0"}), FiniteSpace({"x0"}),
                             FiniteSpace({"m0", "m1"}), single_m(),
                             FiniteSpace({"l0", "l1"}),
                             {{{"x0", "x0", "m0", "m0", "l0"}, kHalf},
                              {{"x0", "x0", "m1", "m0", "l1"}, kHalf}});
}

EmpiricalModel scenario_pr_box() {
  FiniteSpace outcomes({"1", "-1"});
  FiniteSpace measurements({"m0", "m1"});
  std::map<std::vector<std::string>, Rational> cells;
  Rational eighth(1, 8);
  for (std::size_t ya = 0; ya < 2; ++ya) {
    for (std::size_t yb = 0; yb < 2; ++yb) {
      // Outcomes anti-correlate exactly on the (m1,m1) context.
      bool anti = ya == 1 && yb == 1;
      for (std::size_t xa = 0; xa < 2; ++xa) {
        std::size_t xb = anti ? 1 - xa : xa;
        cells[{outcomes.label(xa), outcomes.label(xb), measurements.label(ya),
               measurements.label(yb)}] = eighth;
      }
    }
  }
  return EmpiricalModel::from_cells(outcomes, outcomes, measurements,
                                    measurements, cells);
}

EmpiricalModel scenario_correlated_coin() {
  return EmpiricalModel::from_cells(binary_x(), binary_x(), single_m(), single_m(),
                                    {{{"x0", "x0", "m0", "m0"}, kHalf},
                                     {{"x1", "x1", "m0", "m0"}, kHalf}});
}

EmpiricalModel scenario_product_coins() {
  Rational quarter(1, 4);
  return EmpiricalModel::from_cells(binary_x(), binary_x(), single_m(), single_m(),
                                    {{{"x0", "x0", "m0", "m0"}, quarter},
                                     {{"x0", "x1", "m0", "m0"}, quarter},
                                     {{"x1", "x0", "m0", "m0"}, quarter},
                                     {{"x1", "x1", "m0", "m0"}, quarter}});
}

HVModel scenario_oi_violation() {
  return HVModel::from_cells(binary_x(), binary_x(), single_m(), single_m(),
                             FiniteSpace({"l0"}),
                             {{{"x0", "x0", "m0", "m0", "l0"}, kHalf},
                              {{"x1", "x1", "m0", "m0", "l0"}, kHalf}});
}

std::vector<std::string> scenario_names() {
  return {"det", "coin", "signal", "ldep", "pr-box"};
}

}  // namespace hvcanon
