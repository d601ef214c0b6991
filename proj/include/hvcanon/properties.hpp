#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hvcanon/models.hpp"

namespace hvcanon {

enum class HvProperty {
  kLocality,
  kParameterIndependence,
  kOutcomeIndependence,
  kLambdaIndependence,
  kStrongDeterminism,
  kWeakDeterminism,
};

inline constexpr HvProperty kAllProperties[] = {
    HvProperty::kLocality,          HvProperty::kParameterIndependence,
    HvProperty::kOutcomeIndependence, HvProperty::kLambdaIndependence,
    HvProperty::kStrongDeterminism, HvProperty::kWeakDeterminism,
};

// Stable machine names: "locality", "parameter-independence",
// "outcome-independence", "lambda-independence", "strong-determinism",
// "weak-determinism".
std::string property_name(HvProperty property);
HvProperty property_from_name(const std::string& name);

// One quantified event of a violated instance: the factor it ranges over
// plus its member labels.
struct WitnessEvent {
  std::string scope;
  std::vector<std::string> members;
};

// A violated instance of a property equation: the quantified events, the
// conditioning cell, and the two sides that failed to agree.
struct PropertyWitness {
  std::vector<WitnessEvent> events;
  std::vector<std::pair<std::string, std::string>> cell;  // (factor, label)
  Rational lhs;
  Rational rhs;
};

struct PropertyReport {
  HvProperty property = HvProperty::kLocality;
  bool holds = true;
  // First violated instance in enumeration order (conditioning cells in
  // storage order, then events in family order); empty iff holds.
  std::vector<PropertyWitness> witnesses;
  std::size_t violation_count = 0;
  // True when some quantified space exceeded the subset cap and only the
  // singleton/complement event family was enumerated.
  bool truncated = false;
};

// Enumeration limits. Full subset quantification is used for a factor with
// n atoms iff 2^n <= subset_cap (default 256, i.e. n <= 8); beyond that the
// checkers fall back to empty/full/singleton/complement events and emit a
// warning on stderr. The HVCANON_CAP environment variable, when set to a
// positive integer, overrides both caps.
struct EnumerationCaps {
  std::size_t subset_cap = 256;
  std::size_t strategy_cap = 1000000;
};
EnumerationCaps enumeration_caps();

// The three equivalent renderings of hidden-variable independence from the
// measurement choice; all must yield the same verdict on every model.
enum class LambdaForm {
  kConditional,    // conditionals of hidden events given measurements match
                   // the unconditional hidden distribution
  kProductTable,   // joint (measurement, hidden) marginal is the product of
                   // its two marginals
  kEventProducts,  // product rule for every measurement event x hidden event
};

PropertyReport check_locality(const HVModel& p);
PropertyReport check_parameter_independence(const HVModel& p);
PropertyReport check_outcome_independence(const HVModel& p);
PropertyReport check_lambda_independence(const HVModel& p,
                                         LambdaForm form = LambdaForm::kConditional);
PropertyReport check_strong_determinism(const HVModel& p);
PropertyReport check_weak_determinism(const HVModel& p);

PropertyReport check_property(const HVModel& p, HvProperty property);
std::map<HvProperty, PropertyReport> check_all(const HVModel& p);

}  // namespace hvcanon
