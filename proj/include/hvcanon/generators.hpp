#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"

namespace hvcanon {

// Deterministic random source. Built on the fully specified mt19937_64
// engine with in-house bounded sampling, so identical seeds give identical
// streams on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, bound); rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Stable per-trial seed derivation (splitmix64 finalizer over the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct ModelDims {
  std::size_t outcomes_a = 2;
  std::size_t outcomes_b = 2;
  std::size_t measurements_a = 2;
  std::size_t measurements_b = 2;
  std::size_t hidden = 2;
};

// Exact random distribution on `cells` cells: `units` unit masses dropped
// uniformly and independently, so every mass is a multiple of 1/units.
std::vector<Rational> random_masses(Rng& rng, std::size_t cells, std::size_t units);

// Random partition of the base labels: each label is thrown into one of a
// random number of urns; empty urns are dropped, blocks ordered by their
// smallest member index.
Partition random_partition(Rng& rng, const FiniteSpace& base);

// Deterministic-in-seed random model on spaces labeled x*/m*/l*. Without a
// constraint, masses are sampled on a fixed denominator grid. With one, a
// generative family guarantees the property by construction (and this is
// asserted): response functions per hidden state for strong determinism,
// joint response functions for weak determinism, per-party kernels for
// locality, context-dependent product kernels for outcome independence,
// coupled per-party kernels for parameter independence, and a product of a
// context distribution with a hidden distribution for hidden-variable
// independence.
HVModel random_hv_model(std::uint64_t seed, const ModelDims& dims,
                        std::optional<HvProperty> constraint = std::nullopt);

}  // namespace hvcanon
