#include <doctest.h>

#include <cstdlib>
#include <map>
#include <stdexcept>

#include "hvcanon/generators.hpp"
#include "hvcanon/properties.hpp"
#include "hvcanon/scenarios.hpp"

using hvcanon::HVModel;
using hvcanon::HvProperty;
using hvcanon::LambdaForm;
using hvcanon::ModelDims;
using hvcanon::PropertyReport;
using hvcanon::Rational;
using hvcanon::check_all;
using hvcanon::check_lambda_independence;
using hvcanon::check_locality;
using hvcanon::check_property;
using hvcanon::kAllProperties;
using hvcanon::random_hv_model;

namespace {

bool holds(const HVModel& p, HvProperty property) {
  return check_property(p, property).holds;
}

}  // namespace

TEST_CASE("property names round-trip") {
  for (HvProperty p : kAllProperties) {
    CHECK(hvcanon::property_from_name(hvcanon::property_name(p)) == p);
  }
  CHECK(hvcanon::property_name(HvProperty::kLambdaIndependence) ==
        "lambda-independence");
  CHECK_THROWS_AS(hvcanon::property_from_name("nonsense"), std::invalid_argument);
}

TEST_CASE("deterministic and coin models satisfy everything") {
  for (const HVModel& p : {hvcanon::scenario_det(), hvcanon::scenario_coin()}) {
    for (const auto& [property, report] : check_all(p)) {
      CAPTURE(hvcanon::property_name(property));
      CHECK(report.holds);
      CHECK(report.violation_count == 0);
      CHECK(report.witnesses.empty());
      CHECK_FALSE(report.truncated);
    }
  }
}

TEST_CASE("a single-state correlated coin breaks outcome independence") {
  HVModel p = hvcanon::scenario_oi_violation();
  auto reports = check_all(p);

  CHECK(reports.at(HvProperty::kParameterIndependence).holds);
  CHECK(reports.at(HvProperty::kLambdaIndependence).holds);

  const PropertyReport& oi = reports.at(HvProperty::kOutcomeIndependence);
  CHECK_FALSE(oi.holds);
  CHECK(oi.violation_count == 4);
  // First witness in enumeration order: P(x0, x0 | m0, m0, l0) = 1/2 against
  // the product of the one-party conditionals 1/2 * 1/2.
  REQUIRE(oi.witnesses.size() == 1);
  const auto& w = oi.witnesses.front();
  REQUIRE(w.events.size() == 2);
  CHECK(w.events[0].scope == "outcome_a");
  CHECK(w.events[0].members == std::vector<std::string>{"x0"});
  CHECK(w.events[1].scope == "outcome_b");
  CHECK(w.events[1].members == std::vector<std::string>{"x0"});
  CHECK(w.lhs == Rational(1, 2));
  CHECK(w.rhs == Rational(1, 4));

  const PropertyReport& loc = reports.at(HvProperty::kLocality);
  CHECK_FALSE(loc.holds);
  CHECK(loc.violation_count == 4);
  CHECK(loc.witnesses.front().lhs == Rational(1, 2));
  CHECK(loc.witnesses.front().rhs == Rational(1, 4));

  const PropertyReport& sd = reports.at(HvProperty::kStrongDeterminism);
  CHECK_FALSE(sd.holds);
  CHECK(sd.violation_count == 4);
  CHECK(sd.witnesses.front().lhs == Rational(1, 2));
  CHECK(sd.witnesses.front().rhs == Rational(1));

  const PropertyReport& wd = reports.at(HvProperty::kWeakDeterminism);
  CHECK_FALSE(wd.holds);
  CHECK(wd.violation_count == 6);
}

TEST_CASE("outcome-dependent-on-other-measurement breaks parameter independence") {
  HVModel p = hvcanon::scenario_signal();
  auto reports = check_all(p);
  CHECK_FALSE(reports.at(HvProperty::kLocality).holds);
  CHECK_FALSE(reports.at(HvProperty::kParameterIndependence).holds);
  CHECK_FALSE(reports.at(HvProperty::kStrongDeterminism).holds);
  CHECK(reports.at(HvProperty::kOutcomeIndependence).holds);
  CHECK(reports.at(HvProperty::kWeakDeterminism).holds);
  CHECK(reports.at(HvProperty::kLambdaIndependence).holds);

  CHECK(reports.at(HvProperty::kLocality).violation_count == 4);
  CHECK(reports.at(HvProperty::kParameterIndependence).violation_count == 4);
  CHECK(reports.at(HvProperty::kStrongDeterminism).violation_count == 2);
  // Alice's outcome is a function of Bob's choice: given (m0, m0, l0) she
  // shows x0 surely, yet her m0-margin over Bob's choices is 1/2.
  const auto& w = reports.at(HvProperty::kParameterIndependence).witnesses.front();
  CHECK(w.events.front().scope == "outcome_a");
  CHECK(w.lhs == Rational(1));
  CHECK(w.rhs == Rational(1, 2));
}

TEST_CASE("measurement-correlated hidden state breaks only lambda independence") {
  HVModel p = hvcanon::scenario_ldep();
  auto reports = check_all(p);
  for (HvProperty property : kAllProperties) {
    if (property == HvProperty::kLambdaIndependence) continue;
    CAPTURE(hvcanon::property_name(property));
    CHECK(reports.at(property).holds);
  }
  const PropertyReport& li = reports.at(HvProperty::kLambdaIndependence);
  CHECK_FALSE(li.holds);
  const auto& w = li.witnesses.front();
  REQUIRE(w.events.size() == 1);
  CHECK(w.events[0].scope == "hidden");
  CHECK(w.events[0].members == std::vector<std::string>{"l0"});
  CHECK(w.lhs == Rational(1));   // P(l0 | Alice measures m0) = 1
  CHECK(w.rhs == Rational(1, 2));  // but P(l0) = 1/2
}

TEST_CASE("the three independence renderings agree everywhere") {
  std::vector<HVModel> corpus = {hvcanon::scenario_det(), hvcanon::scenario_coin(),
                                 hvcanon::scenario_signal(), hvcanon::scenario_ldep(),
                                 hvcanon::scenario_oi_violation()};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::optional<HvProperty> constraint;
    if (seed % 3 == 0) constraint = HvProperty::kLambdaIndependence;
    corpus.push_back(random_hv_model(seed, ModelDims{2, 2, 2, 2, 3}, constraint));
  }
  for (const HVModel& p : corpus) {
    bool i = check_lambda_independence(p, LambdaForm::kConditional).holds;
    bool ii = check_lambda_independence(p, LambdaForm::kProductTable).holds;
    bool iii = check_lambda_independence(p, LambdaForm::kEventProducts).holds;
    CHECK(i == ii);
    CHECK(ii == iii);
  }
}

TEST_CASE("locality decomposes into the two independences") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::optional<HvProperty> constraint;
    switch (seed % 4) {
      case 0: constraint = HvProperty::kLocality; break;
      case 1: constraint = HvProperty::kParameterIndependence; break;
      case 2: constraint = HvProperty::kOutcomeIndependence; break;
      default: break;  // unconstrained
    }
    HVModel p = random_hv_model(seed, ModelDims{2, 2, 2, 2, 2}, constraint);
    bool pi = holds(p, HvProperty::kParameterIndependence);
    bool oi = holds(p, HvProperty::kOutcomeIndependence);
    CHECK(holds(p, HvProperty::kLocality) == (pi && oi));
  }
}

TEST_CASE("determinism implications on constrained families") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    HVModel sd = random_hv_model(seed, ModelDims{2, 3, 2, 2, 3},
                                 HvProperty::kStrongDeterminism);
    CHECK(holds(sd, HvProperty::kWeakDeterminism));
    CHECK(holds(sd, HvProperty::kParameterIndependence));
    CHECK(holds(sd, HvProperty::kLocality));

    HVModel wd = random_hv_model(seed, ModelDims{2, 3, 2, 2, 3},
                                 HvProperty::kWeakDeterminism);
    CHECK(holds(wd, HvProperty::kOutcomeIndependence));

    HVModel local =
        random_hv_model(seed, ModelDims{2, 3, 2, 2, 3}, HvProperty::kLocality);
    CHECK(holds(local, HvProperty::kParameterIndependence));
    CHECK(holds(local, HvProperty::kOutcomeIndependence));
  }
}

TEST_CASE("verdicts are invariant under outcome relabeling") {
  HVModel p = hvcanon::scenario_oi_violation();
  // Same structure, different label names.
  std::map<std::vector<std::string>, Rational> cells;
  const auto& t = p.table();
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    if (t.mass(flat) == 0) continue;
    auto labels = t.cell_labels(flat);
    labels[0] = labels[0] == "x0" ? "heads" : "tails";
    labels[1] = labels[1] == "x0" ? "heads" : "tails";
    cells[labels] = t.mass(flat);
  }
  HVModel q = HVModel::from_cells(
      hvcanon::FiniteSpace({"heads", "tails"}), hvcanon::FiniteSpace({"heads", "tails"}),
      p.measurements_a(), p.measurements_b(), p.hidden(), cells);
  for (HvProperty property : kAllProperties) {
    auto rp = check_property(p, property);
    auto rq = check_property(q, property);
    CHECK(rp.holds == rq.holds);
    CHECK(rp.violation_count == rq.violation_count);
  }
}

TEST_CASE("the subset cap falls back to a restricted event family") {
  REQUIRE(setenv("HVCANON_CAP", "4", 1) == 0);
  auto caps = hvcanon::enumeration_caps();
  CHECK(caps.subset_cap == 4);
  CHECK(caps.strategy_cap == 4);
  // Three outcomes need 2^3 = 8 > 4 subsets: the checker truncates but
  // still decides the property (here: a product model, locality holds).
  HVModel p = random_hv_model(5, ModelDims{3, 3, 2, 2, 2}, HvProperty::kLocality);
  PropertyReport report = check_locality(p);
  CHECK(report.truncated);
  CHECK(report.holds);
  REQUIRE(setenv("HVCANON_CAP", "not-a-number", 1) == 0);
  CHECK(hvcanon::enumeration_caps().subset_cap == 256);  // warn and ignore
  REQUIRE(unsetenv("HVCANON_CAP") == 0);
  CHECK_FALSE(check_locality(p).truncated);
}

TEST_CASE("truncated verdicts stay sound on the restricted family") {
  // A violation visible already on singleton events is still found when the
  // cap suppresses full subset enumeration.
  REQUIRE(setenv("HVCANON_CAP", "2", 1) == 0);
  PropertyReport report = check_locality(hvcanon::scenario_oi_violation());
  REQUIRE(unsetenv("HVCANON_CAP") == 0);
  CHECK(report.truncated);
  CHECK_FALSE(report.holds);
}
