#include "hvcanon/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace hvcanon {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<Rational> random_masses(Rng& rng, std::size_t cells, std::size_t units) {
  if (cells == 0 || units == 0) {
    throw std::invalid_argument("random_masses: zero cells or units");
  }
  std::vector<std::size_t> counts(cells, 0);
  for (std::size_t u = 0; u < units; ++u) ++counts[rng.below(cells)];
  std::vector<Rational> mass(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    mass[i] = Rational(counts[i]) / Rational(units);
  }
  return mass;
}

Partition random_partition(Rng& rng, const FiniteSpace& base) {
  std::size_t n = base.size();
  std::size_t urns = 1 + rng.below(n);
  std::vector<std::size_t> urn_of(n);
  for (std::size_t i = 0; i < n; ++i) urn_of[i] = rng.below(urns);
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::size_t> block_of_urn(urns, urns);
  for (std::size_t i = 0; i < n; ++i) {
    if (block_of_urn[urn_of[i]] == urns) {
      block_of_urn[urn_of[i]] = blocks.size();
      blocks.emplace_back();
    }
    blocks[block_of_urn[urn_of[i]]].push_back(base.label(i));
  }
  return Partition(base, std::move(blocks));
}

namespace {

constexpr std::size_t kMassUnits = 24;    // denominator grid for joint masses
constexpr std::size_t kKernelUnits = 12;  // denominator grid for kernels

FiniteSpace indexed_space(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  return FiniteSpace(std::move(labels));
}

struct Builder {
  ModelDims d;
  std::vector<Rational> mass;

  explicit Builder(const ModelDims& dims)
      : d(dims),
        mass(dims.outcomes_a * dims.outcomes_b * dims.measurements_a *
                 dims.measurements_b * dims.hidden,
             Rational(0)) {}

  Rational& at(std::size_t xa, std::size_t xb, std::size_t ya, std::size_t yb,
               std::size_t l) {
    return mass[(((xa * d.outcomes_b + xb) * d.measurements_a + ya) *
                     d.measurements_b +
                 yb) *
                    d.hidden +
                l];
  }

  HVModel finish() && {
    std::vector<FiniteSpace> spaces = {
        indexed_space("x", d.outcomes_a), indexed_space("x", d.outcomes_b),
        indexed_space("m", d.measurements_a), indexed_space("m", d.measurements_b),
        indexed_space("l", d.hidden)};
    return HVModel(ProbTable(std::move(spaces), std::move(mass)));
  }
};

// Comonotone (northwest-corner) coupling of two distributions; its margins
// are exactly u and v, and it is generally not their product.
std::vector<std::vector<Rational>> nw_coupling(const std::vector<Rational>& u,
                                               const std::vector<Rational>& v) {
  std::vector<std::vector<Rational>> c(u.size(), std::vector<Rational>(v.size()));
  std::size_t i = 0, j = 0;
  Rational ui = u[0], vj = v[0];
  for (;;) {
    Rational step = std::min(ui, vj);
    c[i][j] += step;
    ui -= step;
    vj -= step;
    if (ui == 0) {
      if (++i == u.size()) break;
      ui = u[i];
    }
    if (vj == 0) {
      if (++j == v.size()) break;
      vj = v[j];
    }
  }
  return c;
}

// Joint distribution over (measurement pair, hidden state), cell (ya,yb,l).
std::vector<Rational> context_hidden_masses(Rng& rng, const ModelDims& d) {
  return random_masses(rng, d.measurements_a * d.measurements_b * d.hidden,
                       kMassUnits);
}

std::size_t ctx_index(const ModelDims& d, std::size_t ya, std::size_t yb,
                      std::size_t l) {
  return (ya * d.measurements_b + yb) * d.hidden + l;
}

HVModel gen_unconstrained(Rng& rng, const ModelDims& d) {
  Builder b(d);
  b.mass = random_masses(rng, b.mass.size(), kMassUnits);
  return std::move(b).finish();
}

HVModel gen_strong_deterministic(Rng& rng, const ModelDims& d) {
  std::vector<Rational> q = context_hidden_masses(rng, d);
  // Per hidden state, a response function for each party.
  std::vector<std::vector<std::size_t>> fa(d.hidden), fb(d.hidden);
  for (std::size_t l = 0; l < d.hidden; ++l) {
    for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
      fa[l].push_back(rng.below(d.outcomes_a));
    }
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      fb[l].push_back(rng.below(d.outcomes_b));
    }
  }
  Builder b(d);
  for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      for (std::size_t l = 0; l < d.hidden; ++l) {
        b.at(fa[l][ya], fb[l][yb], ya, yb, l) += q[ctx_index(d, ya, yb, l)];
      }
    }
  }
  return std::move(b).finish();
}

HVModel gen_weak_deterministic(Rng& rng, const ModelDims& d) {
  std::vector<Rational> q = context_hidden_masses(rng, d);
  Builder b(d);
  // Per hidden state, a joint response function over measurement pairs.
  for (std::size_t l = 0; l < d.hidden; ++l) {
    for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
      for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
        std::size_t xa = rng.below(d.outcomes_a);
        std::size_t xb = rng.below(d.outcomes_b);
        b.at(xa, xb, ya, yb, l) += q[ctx_index(d, ya, yb, l)];
      }
    }
  }
  return std::move(b).finish();
}

HVModel gen_local(Rng& rng, const ModelDims& d) {
  std::vector<Rational> q = context_hidden_masses(rng, d);
  // Per-party kernels depending on own measurement and the hidden state.
  std::vector<std::vector<Rational>> ka(d.measurements_a * d.hidden);
  std::vector<std::vector<Rational>> kb(d.measurements_b * d.hidden);
  for (auto& kernel : ka) kernel = random_masses(rng, d.outcomes_a, kKernelUnits);
  for (auto& kernel : kb) kernel = random_masses(rng, d.outcomes_b, kKernelUnits);
  Builder b(d);
  for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      for (std::size_t l = 0; l < d.hidden; ++l) {
        const Rational& cell = q[ctx_index(d, ya, yb, l)];
        if (cell == 0) continue;
        for (std::size_t xa = 0; xa < d.outcomes_a; ++xa) {
          for (std::size_t xb = 0; xb < d.outcomes_b; ++xb) {
            b.at(xa, xb, ya, yb, l) +=
                cell * ka[ya * d.hidden + l][xa] * kb[yb * d.hidden + l][xb];
          }
        }
      }
    }
  }
  return std::move(b).finish();
}

HVModel gen_outcome_independent(Rng& rng, const ModelDims& d) {
  std::vector<Rational> q = context_hidden_masses(rng, d);
  Builder b(d);
  // Product kernels that may depend on both measurements, so outcome
  // independence holds while parameter independence typically fails.
  for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      for (std::size_t l = 0; l < d.hidden; ++l) {
        std::vector<Rational> ka = random_masses(rng, d.outcomes_a, kKernelUnits);
        std::vector<Rational> kb = random_masses(rng, d.outcomes_b, kKernelUnits);
        const Rational& cell = q[ctx_index(d, ya, yb, l)];
        if (cell == 0) continue;
        for (std::size_t xa = 0; xa < d.outcomes_a; ++xa) {
          for (std::size_t xb = 0; xb < d.outcomes_b; ++xb) {
            b.at(xa, xb, ya, yb, l) += cell * ka[xa] * kb[xb];
          }
        }
      }
    }
  }
  return std::move(b).finish();
}

HVModel gen_parameter_independent(Rng& rng, const ModelDims& d) {
  std::vector<Rational> q = context_hidden_masses(rng, d);
  std::vector<std::vector<Rational>> ka(d.measurements_a * d.hidden);
  std::vector<std::vector<Rational>> kb(d.measurements_b * d.hidden);
  for (auto& kernel : ka) kernel = random_masses(rng, d.outcomes_a, kKernelUnits);
  for (auto& kernel : kb) kernel = random_masses(rng, d.outcomes_b, kKernelUnits);
  Builder b(d);
  // Every context mixes the product coupling with the comonotone coupling of
  // the same per-party kernels: margins stay fixed (parameter independence)
  // while outcomes correlate.  One mixing weight per model, so t = 0 yields
  // genuinely product models now and then.
  Rational t = Rational(rng.below(3)) / 2;
  for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      for (std::size_t l = 0; l < d.hidden; ++l) {
        const Rational& cell = q[ctx_index(d, ya, yb, l)];
        if (cell == 0) continue;
        const auto& u = ka[ya * d.hidden + l];
        const auto& v = kb[yb * d.hidden + l];
        auto coupled = nw_coupling(u, v);
        for (std::size_t xa = 0; xa < d.outcomes_a; ++xa) {
          for (std::size_t xb = 0; xb < d.outcomes_b; ++xb) {
            Rational joint = (1 - t) * u[xa] * v[xb] + t * coupled[xa][xb];
            b.at(xa, xb, ya, yb, l) += cell * joint;
          }
        }
      }
    }
  }
  return std::move(b).finish();
}

HVModel gen_lambda_independent(Rng& rng, const ModelDims& d) {
  std::vector<Rational> r =
      random_masses(rng, d.measurements_a * d.measurements_b, kMassUnits);
  std::vector<Rational> m = random_masses(rng, d.hidden, kMassUnits);
  Builder b(d);
  for (std::size_t ya = 0; ya < d.measurements_a; ++ya) {
    for (std::size_t yb = 0; yb < d.measurements_b; ++yb) {
      for (std::size_t l = 0; l < d.hidden; ++l) {
        std::vector<Rational> kernel =
            random_masses(rng, d.outcomes_a * d.outcomes_b, kKernelUnits);
        Rational cell = r[ya * d.measurements_b + yb] * m[l];
        if (cell == 0) continue;
        for (std::size_t xa = 0; xa < d.outcomes_a; ++xa) {
          for (std::size_t xb = 0; xb < d.outcomes_b; ++xb) {
            b.at(xa, xb, ya, yb, l) += cell * kernel[xa * d.outcomes_b + xb];
          }
        }
      }
    }
  }
  return std::move(b).finish();
}

}  // namespace

HVModel random_hv_model(std::uint64_t seed, const ModelDims& dims,
                        std::optional<HvProperty> constraint) {
  if (dims.outcomes_a == 0 || dims.outcomes_b == 0 || dims.measurements_a == 0 ||
      dims.measurements_b == 0 || dims.hidden == 0) {
    throw std::invalid_argument("random_hv_model: zero dimension");
  }
  Rng rng(seed);
  if (!constraint) return gen_unconstrained(rng, dims);
  HVModel model = [&] {
    switch (*constraint) {
      case HvProperty::kLocality: return gen_local(rng, dims);
      case HvProperty::kParameterIndependence:
        return gen_parameter_independent(rng, dims);
      case HvProperty::kOutcomeIndependence:
        return gen_outcome_independent(rng, dims);
      case HvProperty::kLambdaIndependence: return gen_lambda_independent(rng, dims);
      case HvProperty::kStrongDeterminism:
        return gen_strong_deterministic(rng, dims);
      case HvProperty::kWeakDeterminism: return gen_weak_deterministic(rng, dims);
    }
    throw std::invalid_argument("random_hv_model: unknown constraint");
  }();
  if (!check_property(model, *constraint).holds) {
    throw std::logic_error("random_hv_model: generated model misses its constraint");
  }
  return model;
}

}  // namespace hvcanon
