#include <doctest.h>

#include <set>
#include <utility>

#include "hvcanon/explore.hpp"
#include "hvcanon/properties.hpp"

using hvcanon::HvProperty;
using hvcanon::ImplicationMatrix;
using hvcanon::ModelDims;
using hvcanon::check_property;
using hvcanon::explore_implications;

namespace {

// The implications that actually hold between the six properties; every
// other ordered pair is refutable by finite models.
const std::set<std::pair<HvProperty, HvProperty>> kTrueImplications = {
    {HvProperty::kLocality, HvProperty::kParameterIndependence},
    {HvProperty::kLocality, HvProperty::kOutcomeIndependence},
    {HvProperty::kStrongDeterminism, HvProperty::kLocality},
    {HvProperty::kStrongDeterminism, HvProperty::kParameterIndependence},
    {HvProperty::kStrongDeterminism, HvProperty::kOutcomeIndependence},
    {HvProperty::kStrongDeterminism, HvProperty::kWeakDeterminism},
    {HvProperty::kWeakDeterminism, HvProperty::kOutcomeIndependence},
};

}  // namespace

TEST_CASE("the matrix covers every ordered pair and separates the true implications") {
  ImplicationMatrix matrix = explore_implications(3, 60, ModelDims{});
  CHECK(matrix.entries.size() == 30);

  std::set<std::pair<HvProperty, HvProperty>> seen;
  for (const auto& entry : matrix.entries) {
    CHECK(entry.premise != entry.conclusion);
    seen.insert({entry.premise, entry.conclusion});
    bool is_theorem = kTrueImplications.count({entry.premise, entry.conclusion}) > 0;
    CAPTURE(hvcanon::property_name(entry.premise));
    CAPTURE(hvcanon::property_name(entry.conclusion));
    // A counterexample to a theorem would be a checker or generator bug; a
    // missing counterexample for a refutable pair would make the explorer
    // useless at these trial counts.
    CHECK(entry.counterexample_found == !is_theorem);
    if (entry.counterexample_found) {
      REQUIRE(entry.model.has_value());
      CHECK(check_property(*entry.model, entry.premise).holds);
      CHECK_FALSE(check_property(*entry.model, entry.conclusion).holds);
    } else {
      CHECK(entry.trials_run == 60);
    }
  }
  CHECK(seen.size() == 30);

  const auto& probe = matrix.pi_oi_to_locality;
  CHECK(probe.trials_checked > 0);
  CHECK_FALSE(probe.counterexample_found);
}

TEST_CASE("exploration is deterministic in the seed") {
  ImplicationMatrix a = explore_implications(17, 25, ModelDims{});
  ImplicationMatrix b = explore_implications(17, 25, ModelDims{});
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].counterexample_found == b.entries[i].counterexample_found);
    CHECK(a.entries[i].model_seed == b.entries[i].model_seed);
    CHECK(a.entries[i].found_at_trial == b.entries[i].found_at_trial);
  }
}

TEST_CASE("counterexample models regenerate from their recorded seed") {
  ImplicationMatrix matrix = explore_implications(5, 30, ModelDims{});
  for (const auto& entry : matrix.entries) {
    if (!entry.counterexample_found) continue;
    hvcanon::HVModel again =
        hvcanon::random_hv_model(entry.model_seed, matrix.dims, entry.premise);
    CHECK(again == *entry.model);
  }
}
