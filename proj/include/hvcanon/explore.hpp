#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hvcanon/generators.hpp"
#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"

namespace hvcanon {

// Result of probing one ordered implication "premise => conclusion":
// premise-constrained models are generated until one violates the
// conclusion or the trial budget runs out.
struct ImplicationOutcome {
  HvProperty premise;
  HvProperty conclusion;
  std::size_t trials_run = 0;
  bool counterexample_found = false;
  std::size_t found_at_trial = 0;     // 0-based, valid when found
  std::uint64_t model_seed = 0;       // seed that regenerates the model
  std::optional<HVModel> model;
};

// Probe of the conjunction "parameter independence and outcome independence
// => locality", fed by the trials of the two single-premise pairs whose
// models happened to satisfy both properties.
struct ConjunctionOutcome {
  std::size_t trials_checked = 0;
  bool counterexample_found = false;
  std::size_t found_at_trial = 0;
  std::uint64_t model_seed = 0;
  std::optional<HVModel> model;
};

struct ImplicationMatrix {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  ModelDims dims;
  std::vector<ImplicationOutcome> entries;  // all 30 ordered pairs
  ConjunctionOutcome pi_oi_to_locality;
};

// Runs every ordered property pair. Deterministic in (seed, trials, dims):
// the model for pair index i, trial t uses derive_seed(derive_seed(seed, i), t).
ImplicationMatrix explore_implications(std::uint64_t seed, std::size_t trials,
                                       const ModelDims& dims);

}  // namespace hvcanon
