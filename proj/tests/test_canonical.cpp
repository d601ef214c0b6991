#include <doctest.h>

#include <map>
#include <stdexcept>

#include "hvcanon/canonical.hpp"
#include "hvcanon/generators.hpp"
#include "hvcanon/scenarios.hpp"

using hvcanon::CanonicalResult;
using hvcanon::FiniteSpace;
using hvcanon::HVModel;
using hvcanon::Interval;
using hvcanon::IntervalHVModel;
using hvcanon::IntervalPiece;
using hvcanon::ModelDims;
using hvcanon::ProbTable;
using hvcanon::Rational;
using hvcanon::canonicalize;
using hvcanon::interval_halve;
using hvcanon::kernel_atoms;

namespace {

ProbTable point_kernel(const HVModel& like, const std::vector<std::string>& cell) {
  return ProbTable::from_cells({like.outcomes_a(), like.outcomes_b(),
                                like.measurements_a(), like.measurements_b()},
                               {{cell, Rational(1)}});
}

// Three hidden states, two of which share their conditional kernel.
HVModel shared_kernel_model() {
  FiniteSpace x({"x0", "x1"});
  FiniteSpace m({"m0"});
  FiniteSpace lam({"l0", "l1", "l2"});
  return HVModel::from_cells(
      x, x, m, m, lam,
      {{{"x0", "x0", "m0", "m0", "l0"}, Rational(1, 4)},
       {{"x1", "x1", "m0", "m0", "l1"}, Rational(1, 2)},
       {{"x0", "x0", "m0", "m0", "l2"}, Rational(1, 4)}});
}

}  // namespace

TEST_CASE("halving witnesses atomlessness") {
  Interval i{Rational(0), Rational(1)};
  Interval h = interval_halve(i);
  CHECK(h == Interval{Rational(0), Rational(1, 2)});
  CHECK(interval_halve(Interval{Rational(1, 3), Rational(1, 2)}) ==
        Interval{Rational(1, 3), Rational(5, 12)});
  // Iterating reaches every dyadic fraction of the original measure: no atom
  // below any positive size survives.
  Interval t = i;
  for (int k = 0; k < 10; ++k) t = interval_halve(t);
  CHECK(t.length() == Rational(1, 1024));
  CHECK(i.lo <= t.lo);
  CHECK(t.hi <= i.hi);
  CHECK_THROWS_AS(interval_halve(Interval{Rational(1, 2), Rational(1, 2)}),
                  std::invalid_argument);
}

TEST_CASE("interval models must tile the unit interval") {
  HVModel coin = hvcanon::scenario_coin();
  ProbTable k0 = point_kernel(coin, {"x0", "x0", "m0", "m0"});
  ProbTable k1 = point_kernel(coin, {"x1", "x1", "m0", "m0"});
  auto spaces = [&](std::vector<IntervalPiece> pieces) {
    return IntervalHVModel(coin.outcomes_a(), coin.outcomes_b(),
                           coin.measurements_a(), coin.measurements_b(),
                           std::move(pieces));
  };
  // Pieces arrive unordered and get sorted.
  IntervalHVModel m = spaces({{{Rational(1, 2), Rational(1)}, k1},
                              {{Rational(0), Rational(1, 2)}, k0}});
  CHECK(m.pieces()[0].interval.lo == 0);
  CHECK(m.pieces()[1].interval.lo == Rational(1, 2));

  CHECK_THROWS_AS(spaces({{{Rational(0), Rational(1, 2)}, k0}}),
                  std::invalid_argument);  // gap at the top
  CHECK_THROWS_AS(spaces({{{Rational(0), Rational(2, 3)}, k0},
                          {{Rational(1, 3), Rational(1)}, k1}}),
                  std::invalid_argument);  // overlap
  CHECK_THROWS_AS(spaces({{{Rational(0), Rational(0)}, k0},
                          {{Rational(0), Rational(1)}, k1}}),
                  std::invalid_argument);  // empty piece
  CHECK_THROWS_AS(
      IntervalHVModel(FiniteSpace({"z"}), coin.outcomes_b(),
                      coin.measurements_a(), coin.measurements_b(),
                      {{{Rational(0), Rational(1)}, k0}}),
      std::invalid_argument);  // kernel on the wrong spaces
}

TEST_CASE("the lift spreads hidden states over consecutive intervals") {
  HVModel coin = hvcanon::scenario_coin();
  IntervalHVModel lifted = hvcanon::atomless_lift(coin);
  REQUIRE(lifted.pieces().size() == 2);
  CHECK(lifted.pieces()[0].interval == Interval{Rational(0), Rational(1, 2)});
  CHECK(lifted.pieces()[1].interval == Interval{Rational(1, 2), Rational(1)});
  CHECK(lifted.pieces()[0].kernel ==
        point_kernel(coin, {"x0", "x0", "m0", "m0"}));
  CHECK(lifted.realized_empirical() == hvcanon::realized_empirical(coin));
}

TEST_CASE("kernel atoms group states with equal conditional profiles") {
  auto atoms = kernel_atoms(shared_kernel_model());
  REQUIRE(atoms.block_count() == 2);
  CHECK(atoms.block_name(0) == "l0+l2");
  CHECK(atoms.block_name(1) == "l1");
}

TEST_CASE("kernel atoms require positive state masses") {
  FiniteSpace x({"x0"});
  FiniteSpace m({"m0"});
  HVModel with_null = HVModel::from_cells(
      x, x, m, m, FiniteSpace({"l0", "l1"}),
      {{{"x0", "x0", "m0", "m0", "l0"}, Rational(1)}});
  CHECK_THROWS_AS(kernel_atoms(with_null), std::invalid_argument);
  HVModel cleaned = hvcanon::drop_null_hidden(with_null);
  CHECK(cleaned.hidden().labels() == std::vector<std::string>{"l0"});
  CHECK(kernel_atoms(cleaned).block_count() == 1);
  // Null states do not block canonicalization itself.
  CHECK(canonicalize(with_null).model.pieces().size() == 1);
}

TEST_CASE("canonicalization of the coin model") {
  HVModel coin = hvcanon::scenario_coin();
  CanonicalResult c = canonicalize(coin);
  REQUIRE(c.model.pieces().size() == 2);
  CHECK(c.model.pieces()[0].interval == Interval{Rational(0), Rational(1, 2)});
  CHECK(c.model.pieces()[1].interval == Interval{Rational(1, 2), Rational(1)});
  CHECK(c.model.realized_empirical() == hvcanon::realized_empirical(coin));

  REQUIRE(c.iso.images.size() == 2);
  CHECK(c.iso.images[0].first == "l0");
  CHECK(c.iso.images[1].first == "l1");
  CHECK(c.iso.image_length("l0") == Rational(1, 2));
  CHECK(c.iso.image_length("l1") == Rational(1, 2));
}

TEST_CASE("states with equal kernels merge into one piece") {
  CanonicalResult c = canonicalize(shared_kernel_model());
  REQUIRE(c.model.pieces().size() == 2);
  CHECK(c.model.pieces()[0].interval == Interval{Rational(0), Rational(1, 2)});
  CHECK(c.model.pieces()[1].interval == Interval{Rational(1, 2), Rational(1)});
  CHECK(c.iso.image_length("l0+l2") == Rational(1, 2));
  CHECK(c.iso.image_length("l1") == Rational(1, 2));
  CHECK(c.model.realized_empirical() ==
        hvcanon::realized_empirical(shared_kernel_model()));
}

TEST_CASE("canonical images preserve realization on random models") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    HVModel p = hvcanon::random_hv_model(seed, ModelDims{2, 2, 2, 2, 4});
    CanonicalResult c = canonicalize(p);
    CHECK(c.model.realized_empirical() == hvcanon::realized_empirical(p));
    Rational total(0);
    for (const auto& piece : c.model.pieces()) total += piece.interval.length();
    CHECK(total == Rational(1));
  }
}

TEST_CASE("collapse inverts canonicalization up to hidden labels") {
  CanonicalResult c = canonicalize(hvcanon::scenario_coin());
  HVModel collapsed = hvcanon::collapse(c.model);
  CHECK(collapsed.hidden().labels() == std::vector<std::string>{"seg0", "seg1"});
  CHECK(hvcanon::realized_empirical(collapsed) ==
        hvcanon::realized_empirical(hvcanon::scenario_coin()));
  // The kernels are pairwise distinct, so re-canonicalizing reproduces the
  // same pieces exactly.
  CHECK(canonicalize(collapsed).model == c.model);
}

TEST_CASE("interval property checks match the collapsed model") {
  HVModel coin = hvcanon::scenario_coin();
  auto reports = hvcanon::check_interval_properties(canonicalize(coin).model);
  for (const auto& [property, report] : reports) {
    CAPTURE(hvcanon::property_name(property));
    CHECK(report.holds);
  }
  // A property failure survives the transfer to the unit interval.
  auto signal_reports =
      hvcanon::check_interval_properties(canonicalize(hvcanon::scenario_signal()).model);
  CHECK_FALSE(signal_reports.at(hvcanon::HvProperty::kParameterIndependence).holds);
  CHECK(signal_reports.at(hvcanon::HvProperty::kOutcomeIndependence).holds);
}

TEST_CASE("hidden distribution reads off the last factor") {
  ProbTable d = hvcanon::hv_distribution(hvcanon::scenario_coin());
  CHECK(d.mass(0) == Rational(1, 2));
  CHECK(d.mass(1) == Rational(1, 2));
}
