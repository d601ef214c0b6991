#include "hvcanon/explore.hpp"

#include <stdexcept>

namespace hvcanon {

ImplicationMatrix explore_implications(std::uint64_t seed, std::size_t trials,
                                       const ModelDims& dims) {
  if (trials == 0) throw std::invalid_argument("explore_implications: zero trials");
  ImplicationMatrix matrix;
  matrix.seed = seed;
  matrix.trials = trials;
  matrix.dims = dims;

  std::size_t pair_index = 0;
  for (HvProperty premise : kAllProperties) {
    for (HvProperty conclusion : kAllProperties) {
      if (premise == conclusion) continue;
      ImplicationOutcome outcome;
      outcome.premise = premise;
      outcome.conclusion = conclusion;
      std::uint64_t pair_seed = derive_seed(seed, pair_index);
      for (std::size_t trial = 0; trial < trials; ++trial) {
        std::uint64_t model_seed = derive_seed(pair_seed, trial);
        HVModel model = random_hv_model(model_seed, dims, premise);
        outcome.trials_run = trial + 1;
        if (!check_property(model, conclusion).holds) {
          outcome.counterexample_found = true;
          outcome.found_at_trial = trial;
          outcome.model_seed = model_seed;
          outcome.model = std::move(model);
          break;
        }
      }
      matrix.entries.push_back(std::move(outcome));
      ++pair_index;
    }
  }

  // Dedicated trials for the conjunction: alternate between the two
  // generative families and keep the models satisfying both independence
  // properties; each must then satisfy locality.
  std::uint64_t conjunction_seed = derive_seed(seed, pair_index);
  auto& probe = matrix.pi_oi_to_locality;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::uint64_t model_seed = derive_seed(conjunction_seed, trial);
    HvProperty premise = trial % 2 == 0 ? HvProperty::kParameterIndependence
                                        : HvProperty::kOutcomeIndependence;
    HvProperty other = trial % 2 == 0 ? HvProperty::kOutcomeIndependence
                                      : HvProperty::kParameterIndependence;
    HVModel model = random_hv_model(model_seed, dims, premise);
    if (!check_property(model, other).holds) continue;
    ++probe.trials_checked;
    if (!probe.counterexample_found && !check_locality(model).holds) {
      probe.counterexample_found = true;
      probe.found_at_trial = trial;
      probe.model_seed = model_seed;
      probe.model = std::move(model);
    }
  }
  return matrix;
}

}  // namespace hvcanon
