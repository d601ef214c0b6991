#include "hvcanon/properties.hpp"

#include <bit>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace hvcanon {

std::string property_name(HvProperty property) {
  switch (property) {
    case HvProperty::kLocality: return "locality";
    case HvProperty::kParameterIndependence: return "parameter-independence";
    case HvProperty::kOutcomeIndependence: return "outcome-independence";
    case HvProperty::kLambdaIndependence: return "lambda-independence";
    case HvProperty::kStrongDeterminism: return "strong-determinism";
    case HvProperty::kWeakDeterminism: return "weak-determinism";
  }
  throw std::invalid_argument("unknown property");
}

HvProperty property_from_name(const std::string& name) {
  for (HvProperty property : kAllProperties) {
    if (property_name(property) == name) return property;
  }
  throw std::invalid_argument("unknown property name: " + name);
}

EnumerationCaps enumeration_caps() {
  EnumerationCaps caps;
  if (const char* text = std::getenv("HVCANON_CAP")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(text, &end, 10);
    if (end != text && *end == '\0' && value > 0) {
      caps.subset_cap = static_cast<std::size_t>(value);
      caps.strategy_cap = static_cast<std::size_t>(value);
    } else {
      std::cerr << "hvcanon: warning: ignoring invalid HVCANON_CAP value\n";
    }
  }
  return caps;
}

namespace {

// Full subset enumeration never exceeds 2^16 events regardless of cap.
constexpr std::size_t kFullEnumerationAtomLimit = 16;

// The events a checker quantifies over for one factor. Either every subset
// (events indexed by bitmask, ascending) or, past the cap, the restricted
// family: empty set, full set, singletons, then complements of singletons.
struct EventFamily {
  bool full = true;
  std::size_t n = 0;
  std::size_t count = 0;
  std::vector<std::vector<std::size_t>> events;  // explicit lists, only if !full

  std::vector<std::size_t> members(std::size_t index) const {
    if (!full) return events[index];
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (index >> i & 1) out.push_back(i);
    }
    return out;
  }
};

EventFamily make_family(std::size_t n, std::size_t subset_cap, const char* scope) {
  EventFamily fam;
  fam.n = n;
  fam.full = n <= kFullEnumerationAtomLimit &&
             (std::size_t{1} << n) <= subset_cap;
  if (fam.full) {
    fam.count = std::size_t{1} << n;
    return fam;
  }
  std::cerr << "hvcanon: warning: " << scope << " has " << n
            << " atoms, beyond the subset enumeration cap " << subset_cap
            << "; quantifying over empty/full/singleton/complement events only\n";
  fam.events.push_back({});
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  fam.events.push_back(all);
  for (std::size_t i = 0; i < n; ++i) fam.events.push_back({i});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> complement;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) complement.push_back(j);
    }
    fam.events.push_back(std::move(complement));
  }
  fam.count = fam.events.size();
  return fam;
}

// sums[i] = sum of atoms over the family's i-th event.
std::vector<Rational> subset_sums(const EventFamily& fam,
                                  const std::vector<Rational>& atoms) {
  std::vector<Rational> sums(fam.count);
  if (fam.full) {
    for (std::size_t m = 1; m < fam.count; ++m) {
      sums[m] = sums[m & (m - 1)] + atoms[std::countr_zero(m)];
    }
  } else {
    for (std::size_t i = 0; i < fam.count; ++i) {
      for (std::size_t idx : fam.events[i]) sums[i] += atoms[idx];
    }
  }
  return sums;
}

// sums[i][j] = sum of joint[r][c] over r in event i of fa, c in event j of fb.
std::vector<std::vector<Rational>> rectangle_sums(
    const EventFamily& fa, const EventFamily& fb,
    const std::vector<std::vector<Rational>>& joint) {
  std::size_t cols = joint[0].size();
  std::vector<std::vector<Rational>> sums(fa.count);
  if (fa.full) {
    std::vector<std::vector<Rational>> rows(fa.count);
    rows[0].assign(cols, Rational(0));
    sums[0] = subset_sums(fb, rows[0]);
    for (std::size_t m = 1; m < fa.count; ++m) {
      rows[m] = rows[m & (m - 1)];
      const auto& add = joint[std::countr_zero(m)];
      for (std::size_t c = 0; c < cols; ++c) rows[m][c] += add[c];
      sums[m] = subset_sums(fb, rows[m]);
    }
  } else {
    for (std::size_t i = 0; i < fa.count; ++i) {
      std::vector<Rational> row(cols);
      for (std::size_t r : fa.events[i]) {
        for (std::size_t c = 0; c < cols; ++c) row[c] += joint[r][c];
      }
      sums[i] = subset_sums(fb, row);
    }
  }
  return sums;
}

// Dense conditional profiles of a model, indexed by conditioning cells.
// Context-hidden cells are z = (ya*nyb + yb)*nl + l; per-party cells are
// ya*nl + l and yb*nl + l.
struct ModelView {
  std::size_t na, nb, nya, nyb, nl;
  std::vector<Rational> zmass;                        // (ya,yb,l) mass
  std::vector<std::vector<std::vector<Rational>>> R;  // [z][xa][xb], z positive
  std::vector<Rational> amass;                        // (ya,l) mass
  std::vector<std::vector<Rational>> alpha;           // [ya*nl+l][xa]
  std::vector<Rational> bmass;                        // (yb,l) mass
  std::vector<std::vector<Rational>> beta;            // [yb*nl+l][xb]
};

ModelView make_view(const HVModel& p) {
  ModelView v;
  v.na = p.outcomes_a().size();
  v.nb = p.outcomes_b().size();
  v.nya = p.measurements_a().size();
  v.nyb = p.measurements_b().size();
  v.nl = p.hidden().size();
  std::size_t nz = v.nya * v.nyb * v.nl;
  v.zmass.assign(nz, Rational(0));
  v.R.resize(nz);
  v.amass.assign(v.nya * v.nl, Rational(0));
  v.alpha.resize(v.nya * v.nl);
  v.bmass.assign(v.nyb * v.nl, Rational(0));
  v.beta.resize(v.nyb * v.nl);

  const ProbTable& t = p.table();
  std::vector<std::vector<std::vector<Rational>>> zjoint(nz);
  std::vector<std::vector<Rational>> ajoint(v.nya * v.nl);
  std::vector<std::vector<Rational>> bjoint(v.nyb * v.nl);
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    const Rational& m = t.mass(flat);
    if (m == 0) continue;
    auto cell = t.cell_of(flat);
    std::size_t xa = cell[0], xb = cell[1], ya = cell[2], yb = cell[3], l = cell[4];
    std::size_t z = (ya * v.nyb + yb) * v.nl + l;
    if (zjoint[z].empty()) {
      zjoint[z].assign(v.na, std::vector<Rational>(v.nb, Rational(0)));
    }
    zjoint[z][xa][xb] += m;
    v.zmass[z] += m;
    std::size_t a = ya * v.nl + l;
    if (ajoint[a].empty()) ajoint[a].assign(v.na, Rational(0));
    ajoint[a][xa] += m;
    v.amass[a] += m;
    std::size_t b = yb * v.nl + l;
    if (bjoint[b].empty()) bjoint[b].assign(v.nb, Rational(0));
    bjoint[b][xb] += m;
    v.bmass[b] += m;
  }
  for (std::size_t z = 0; z < nz; ++z) {
    if (v.zmass[z] == 0) continue;
    v.R[z] = std::move(zjoint[z]);
    for (auto& row : v.R[z]) {
      for (auto& value : row) value /= v.zmass[z];
    }
  }
  for (std::size_t a = 0; a < v.amass.size(); ++a) {
    if (v.amass[a] == 0) continue;
    v.alpha[a] = std::move(ajoint[a]);
    for (auto& value : v.alpha[a]) value /= v.amass[a];
  }
  for (std::size_t b = 0; b < v.bmass.size(); ++b) {
    if (v.bmass[b] == 0) continue;
    v.beta[b] = std::move(bjoint[b]);
    for (auto& value : v.beta[b]) value /= v.bmass[b];
  }
  return v;
}

WitnessEvent witness_event(const std::string& scope, const FiniteSpace& space,
                           const std::vector<std::size_t>& members) {
  WitnessEvent event;
  event.scope = scope;
  for (std::size_t index : members) event.members.push_back(space.label(index));
  return event;
}

std::vector<std::pair<std::string, std::string>> context_hidden_cell(
    const HVModel& p, std::size_t ya, std::size_t yb, std::size_t l) {
  return {{"measurement_a", p.measurements_a().label(ya)},
          {"measurement_b", p.measurements_b().label(yb)},
          {"hidden", p.hidden().label(l)}};
}

struct Recorder {
  PropertyReport report;

  explicit Recorder(HvProperty property, bool truncated) {
    report.property = property;
    report.holds = true;
    report.truncated = truncated;
  }

  void violation(PropertyWitness witness) {
    if (report.witnesses.empty()) report.witnesses.push_back(std::move(witness));
    ++report.violation_count;
    report.holds = false;
  }
};

}  // namespace

PropertyReport check_locality(const HVModel& p) {
  EnumerationCaps caps = enumeration_caps();
  ModelView v = make_view(p);
  EventFamily fa = make_family(v.na, caps.subset_cap, "outcome_a");
  EventFamily fb = make_family(v.nb, caps.subset_cap, "outcome_b");
  Recorder rec(HvProperty::kLocality, !fa.full || !fb.full);
  for (std::size_t ya = 0; ya < v.nya; ++ya) {
    for (std::size_t yb = 0; yb < v.nyb; ++yb) {
      for (std::size_t l = 0; l < v.nl; ++l) {
        std::size_t z = (ya * v.nyb + yb) * v.nl + l;
        if (v.zmass[z] == 0) continue;
        auto rect = rectangle_sums(fa, fb, v.R[z]);
        auto ssa = subset_sums(fa, v.alpha[ya * v.nl + l]);
        auto ssb = subset_sums(fb, v.beta[yb * v.nl + l]);
        for (std::size_t i = 0; i < fa.count; ++i) {
          for (std::size_t j = 0; j < fb.count; ++j) {
            Rational rhs = ssa[i] * ssb[j];
            if (rect[i][j] == rhs) continue;
            rec.violation(
                {{witness_event("outcome_a", p.outcomes_a(), fa.members(i)),
                  witness_event("outcome_b", p.outcomes_b(), fb.members(j))},
                 context_hidden_cell(p, ya, yb, l),
                 rect[i][j],
                 rhs});
          }
        }
      }
    }
  }
  return rec.report;
}

PropertyReport check_parameter_independence(const HVModel& p) {
  EnumerationCaps caps = enumeration_caps();
  ModelView v = make_view(p);
  EventFamily fa = make_family(v.na, caps.subset_cap, "outcome_a");
  EventFamily fb = make_family(v.nb, caps.subset_cap, "outcome_b");
  Recorder rec(HvProperty::kParameterIndependence, !fa.full || !fb.full);
  for (std::size_t ya = 0; ya < v.nya; ++ya) {
    for (std::size_t yb = 0; yb < v.nyb; ++yb) {
      for (std::size_t l = 0; l < v.nl; ++l) {
        std::size_t z = (ya * v.nyb + yb) * v.nl + l;
        if (v.zmass[z] == 0) continue;
        std::vector<Rational> arow(v.na), bcol(v.nb);
        for (std::size_t xa = 0; xa < v.na; ++xa) {
          for (std::size_t xb = 0; xb < v.nb; ++xb) {
            arow[xa] += v.R[z][xa][xb];
            bcol[xb] += v.R[z][xa][xb];
          }
        }
        auto joint_a = subset_sums(fa, arow);
        auto own_a = subset_sums(fa, v.alpha[ya * v.nl + l]);
        for (std::size_t i = 0; i < fa.count; ++i) {
          if (joint_a[i] == own_a[i]) continue;
          rec.violation({{witness_event("outcome_a", p.outcomes_a(), fa.members(i))},
                         context_hidden_cell(p, ya, yb, l),
                         joint_a[i],
                         own_a[i]});
        }
        auto joint_b = subset_sums(fb, bcol);
        auto own_b = subset_sums(fb, v.beta[yb * v.nl + l]);
        for (std::size_t j = 0; j < fb.count; ++j) {
          if (joint_b[j] == own_b[j]) continue;
          rec.violation({{witness_event("outcome_b", p.outcomes_b(), fb.members(j))},
                         context_hidden_cell(p, ya, yb, l),
                         joint_b[j],
                         own_b[j]});
        }
      }
    }
  }
  return rec.report;
}

PropertyReport check_outcome_independence(const HVModel& p) {
  EnumerationCaps caps = enumeration_caps();
  ModelView v = make_view(p);
  EventFamily fa = make_family(v.na, caps.subset_cap, "outcome_a");
  EventFamily fb = make_family(v.nb, caps.subset_cap, "outcome_b");
  Recorder rec(HvProperty::kOutcomeIndependence, !fa.full || !fb.full);
  for (std::size_t ya = 0; ya < v.nya; ++ya) {
    for (std::size_t yb = 0; yb < v.nyb; ++yb) {
      for (std::size_t l = 0; l < v.nl; ++l) {
        std::size_t z = (ya * v.nyb + yb) * v.nl + l;
        if (v.zmass[z] == 0) continue;
        std::vector<Rational> arow(v.na), bcol(v.nb);
        for (std::size_t xa = 0; xa < v.na; ++xa) {
          for (std::size_t xb = 0; xb < v.nb; ++xb) {
            arow[xa] += v.R[z][xa][xb];
            bcol[xb] += v.R[z][xa][xb];
          }
        }
        auto rect = rectangle_sums(fa, fb, v.R[z]);
        auto ssa = subset_sums(fa, arow);
        auto ssb = subset_sums(fb, bcol);
        for (std::size_t i = 0; i < fa.count; ++i) {
          for (std::size_t j = 0; j < fb.count; ++j) {
            Rational rhs = ssa[i] * ssb[j];
            if (rect[i][j] == rhs) continue;
            rec.violation(
                {{witness_event("outcome_a", p.outcomes_a(), fa.members(i)),
                  witness_event("outcome_b", p.outcomes_b(), fb.members(j))},
                 context_hidden_cell(p, ya, yb, l),
                 rect[i][j],
                 rhs});
          }
        }
      }
    }
  }
  return rec.report;
}

PropertyReport check_strong_determinism(const HVModel& p) {
  EnumerationCaps caps = enumeration_caps();
  ModelView v = make_view(p);
  EventFamily fa = make_family(v.na, caps.subset_cap, "outcome_a");
  EventFamily fb = make_family(v.nb, caps.subset_cap, "outcome_b");
  Recorder rec(HvProperty::kStrongDeterminism, !fa.full || !fb.full);
  for (std::size_t ya = 0; ya < v.nya; ++ya) {
    for (std::size_t l = 0; l < v.nl; ++l) {
      std::size_t a = ya * v.nl + l;
      if (v.amass[a] == 0) continue;
      auto ssa = subset_sums(fa, v.alpha[a]);
      for (std::size_t i = 0; i < fa.count; ++i) {
        if (ssa[i] == 0 || ssa[i] == 1) continue;
        rec.violation({{witness_event("outcome_a", p.outcomes_a(), fa.members(i))},
                       {{"measurement_a", p.measurements_a().label(ya)},
                        {"hidden", p.hidden().label(l)}},
                       ssa[i],
                       ssa[i] < Rational(1, 2) ? Rational(0) : Rational(1)});
      }
    }
  }
  for (std::size_t yb = 0; yb < v.nyb; ++yb) {
    for (std::size_t l = 0; l < v.nl; ++l) {
      std::size_t b = yb * v.nl + l;
      if (v.bmass[b] == 0) continue;
      auto ssb = subset_sums(fb, v.beta[b]);
      for (std::size_t j = 0; j < fb.count; ++j) {
        if (ssb[j] == 0 || ssb[j] == 1) continue;
        rec.violation({{witness_event("outcome_b", p.outcomes_b(), fb.members(j))},
                       {{"measurement_b", p.measurements_b().label(yb)},
                        {"hidden", p.hidden().label(l)}},
                       ssb[j],
                       ssb[j] < Rational(1, 2) ? Rational(0) : Rational(1)});
      }
    }
  }
  return rec.report;
}

PropertyReport check_weak_determinism(const HVModel& p) {
  EnumerationCaps caps = enumeration_caps();
  ModelView v = make_view(p);
  EventFamily fa = make_family(v.na, caps.subset_cap, "outcome_a");
  EventFamily fb = make_family(v.nb, caps.subset_cap, "outcome_b");
  Recorder rec(HvProperty::kWeakDeterminism, !fa.full || !fb.full);
  for (std::size_t ya = 0; ya < v.nya; ++ya) {
    for (std::size_t yb = 0; yb < v.nyb; ++yb) {
      for (std::size_t l = 0; l < v.nl; ++l) {
        std::size_t z = (ya * v.nyb + yb) * v.nl + l;
        if (v.zmass[z] == 0) continue;
        auto rect = rectangle_sums(fa, fb, v.R[z]);
        for (std::size_t i = 0; i < fa.count; ++i) {
          for (std::size_t j = 0; j < fb.count; ++j) {
            const Rational& value = rect[i][j];
            if (value == 0 || value == 1) continue;
            rec.violation(
                {{witness_event("outcome_a", p.outcomes_a(), fa.members(i)),
                  witness_event("outcome_b", p.outcomes_b(), fb.members(j))},
                 context_hidden_cell(p, ya, yb, l),
                 value,
                 value < Rational(1, 2) ? Rational(0) : Rational(1)});
          }
        }
      }
    }
  }
  return rec.report;
}

PropertyReport check_lambda_independence(const HVModel& p, LambdaForm form) {
  EnumerationCaps caps = enumeration_caps();
  std::size_t nya = p.measurements_a().size();
  std::size_t nyb = p.measurements_b().size();
  std::size_t nl = p.hidden().size();
  std::size_t ny = nya * nyb;

  // Joint (measurement pair, hidden) masses and the two marginals.
  std::vector<Rational> yl(ny * nl), ymass(ny), lmass(nl);
  const ProbTable& t = p.table();
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    const Rational& m = t.mass(flat);
    if (m == 0) continue;
    auto cell = t.cell_of(flat);
    std::size_t y = cell[2] * nyb + cell[3];
    yl[y * nl + cell[4]] += m;
    ymass[y] += m;
    lmass[cell[4]] += m;
  }

  auto y_cell = [&](std::size_t y) {
    return std::vector<std::pair<std::string, std::string>>{
        {"measurement_a", p.measurements_a().label(y / nyb)},
        {"measurement_b", p.measurements_b().label(y % nyb)}};
  };

  if (form == LambdaForm::kConditional) {
    EventFamily fl = make_family(nl, caps.subset_cap, "hidden");
    Recorder rec(HvProperty::kLambdaIndependence, !fl.full);
    auto global = subset_sums(fl, lmass);
    for (std::size_t y = 0; y < ny; ++y) {
      if (ymass[y] == 0) continue;
      std::vector<Rational> gamma(nl);
      for (std::size_t l = 0; l < nl; ++l) gamma[l] = yl[y * nl + l] / ymass[y];
      auto ss = subset_sums(fl, gamma);
      for (std::size_t i = 0; i < fl.count; ++i) {
        if (ss[i] == global[i]) continue;
        rec.violation({{witness_event("hidden", p.hidden(), fl.members(i))},
                       y_cell(y),
                       ss[i],
                       global[i]});
      }
    }
    return rec.report;
  }

  if (form == LambdaForm::kProductTable) {
    Recorder rec(HvProperty::kLambdaIndependence, false);
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t l = 0; l < nl; ++l) {
        Rational product = ymass[y] * lmass[l];
        if (yl[y * nl + l] == product) continue;
        auto cell = y_cell(y);
        cell.emplace_back("hidden", p.hidden().label(l));
        rec.violation({{}, std::move(cell), yl[y * nl + l], product});
      }
    }
    return rec.report;
  }

  // kEventProducts: the product rule over measurement-pair events K and
  // hidden events L, p(K x L) = p(K) p(L).
  EventFamily fy = make_family(ny, caps.subset_cap, "measurement_pair");
  EventFamily fl = make_family(nl, caps.subset_cap, "hidden");
  Recorder rec(HvProperty::kLambdaIndependence, !fy.full || !fl.full);
  std::vector<std::vector<Rational>> joint(ny, std::vector<Rational>(nl));
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t l = 0; l < nl; ++l) joint[y][l] = yl[y * nl + l];
  }
  auto rect = rectangle_sums(fy, fl, joint);
  auto ssy = subset_sums(fy, ymass);
  auto ssl = subset_sums(fl, lmass);
  FiniteSpace ypairs = product({p.measurements_a(), p.measurements_b()});
  for (std::size_t i = 0; i < fy.count; ++i) {
    for (std::size_t j = 0; j < fl.count; ++j) {
      Rational rhs = ssy[i] * ssl[j];
      if (rect[i][j] == rhs) continue;
      rec.violation({{witness_event("measurement_pair", ypairs, fy.members(i)),
                      witness_event("hidden", p.hidden(), fl.members(j))},
                     {},
                     rect[i][j],
                     rhs});
    }
  }
  return rec.report;
}

PropertyReport check_property(const HVModel& p, HvProperty property) {
  switch (property) {
    case HvProperty::kLocality: return check_locality(p);
    case HvProperty::kParameterIndependence: return check_parameter_independence(p);
    case HvProperty::kOutcomeIndependence: return check_outcome_independence(p);
    case HvProperty::kLambdaIndependence: return check_lambda_independence(p);
    case HvProperty::kStrongDeterminism: return check_strong_determinism(p);
    case HvProperty::kWeakDeterminism: return check_weak_determinism(p);
  }
  throw std::invalid_argument("unknown property");
}

std::map<HvProperty, PropertyReport> check_all(const HVModel& p) {
  std::map<HvProperty, PropertyReport> reports;
  for (HvProperty property : kAllProperties) {
    reports.emplace(property, check_property(p, property));
  }
  return reports;
}

}  // namespace hvcanon
