#pragma once

#include <string>

#include <json.hpp>

#include "hvcanon/canonical.hpp"
#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"
#include "hvcanon/solver.hpp"

namespace hvcanon {

// Model serialization. Table cells are flattened into an object keyed by
// comma-joined label tuples with "num/den" values; zero-mass cells are
// omitted on output and optional on input. Loaders validate spaces, key
// arity, label membership, and total mass, and ignore unknown top-level
// fields (fixture files carry provenance there).

nlohmann::json to_json(const EmpiricalModel& e);
nlohmann::json to_json(const HVModel& p);
nlohmann::json to_json(const IntervalHVModel& m);
nlohmann::json to_json(const IsoMap& iso);
nlohmann::json to_json(const PropertyWitness& witness);
nlohmann::json to_json(const PropertyReport& report);
nlohmann::json to_json(const FeasibilityResult& result, const EmpiricalModel& e);
nlohmann::json to_json(const ChshResult& chsh, const EmpiricalModel& e);

EmpiricalModel empirical_from_json(const nlohmann::json& j);
HVModel hv_from_json(const nlohmann::json& j);
IntervalHVModel interval_from_json(const nlohmann::json& j);

// True iff the value describes a hidden-variable model (has a "lambda"
// field) rather than an empirical model.
bool is_hv_json(const nlohmann::json& j);

// Canonical text rendering: two-space indent, keys sorted (object order),
// trailing newline. All CLI output goes through this.
std::string dump_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace hvcanon
