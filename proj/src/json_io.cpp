#include "hvcanon/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hvcanon {

namespace {

using nlohmann::json;

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(key.substr(start));
      return parts;
    }
    parts.push_back(key.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string key;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) key += ',';
    key += labels[i];
  }
  return key;
}

json labels_json(const FiniteSpace& space) {
  json out = json::array();
  for (const std::string& label : space.labels()) out.push_back(label);
  return out;
}

FiniteSpace space_from_json(const json& j, const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    throw std::invalid_argument("model JSON: missing label array \"" + field + "\"");
  }
  std::vector<std::string> labels;
  for (const json& label : j.at(field)) {
    if (!label.is_string()) {
      throw std::invalid_argument("model JSON: \"" + field +
                                  "\" must contain strings");
    }
    labels.push_back(label.get<std::string>());
  }
  return FiniteSpace(std::move(labels));
}

json cells_json(const ProbTable& table) {
  json out = json::object();
  for (std::size_t flat = 0; flat < table.cell_count(); ++flat) {
    if (table.mass(flat) == 0) continue;
    out[join_labels(table.cell_labels(flat))] = format_rational(table.mass(flat));
  }
  return out;
}

std::map<std::vector<std::string>, Rational> cells_from_json(const json& j,
                                                             const std::string& field,
                                                             std::size_t arity) {
  if (!j.contains(field) || !j.at(field).is_object()) {
    throw std::invalid_argument("model JSON: missing cell object \"" + field + "\"");
  }
  std::map<std::vector<std::string>, Rational> cells;
  for (const auto& [key, value] : j.at(field).items()) {
    std::vector<std::string> parts = split_key(key);
    if (parts.size() != arity) {
      throw std::invalid_argument("model JSON: cell key \"" + key + "\" must have " +
                                  std::to_string(arity) + " labels");
    }
    if (!value.is_string()) {
      throw std::invalid_argument("model JSON: cell \"" + key +
                                  "\" must be a \"num/den\" string");
    }
    cells[parts] = parse_rational(value.get<std::string>());
  }
  return cells;
}

json interval_json(const Interval& interval) {
  return json{{"lo", format_rational(interval.lo)},
              {"hi", format_rational(interval.hi)}};
}

Interval interval_from(const json& j) {
  if (!j.contains("lo") || !j.contains("hi") || !j.at("lo").is_string() ||
      !j.at("hi").is_string()) {
    throw std::invalid_argument("interval JSON: needs \"lo\" and \"hi\" strings");
  }
  return Interval{parse_rational(j.at("lo").get<std::string>()),
                  parse_rational(j.at("hi").get<std::string>())};
}

}  // namespace

json to_json(const EmpiricalModel& e) {
  return json{{"outcomes_a", labels_json(e.outcomes_a())},
              {"outcomes_b", labels_json(e.outcomes_b())},
              {"measurements_a", labels_json(e.measurements_a())},
              {"measurements_b", labels_json(e.measurements_b())},
              {"e", cells_json(e.table())}};
}

json to_json(const HVModel& p) {
  return json{{"outcomes_a", labels_json(p.outcomes_a())},
              {"outcomes_b", labels_json(p.outcomes_b())},
              {"measurements_a", labels_json(p.measurements_a())},
              {"measurements_b", labels_json(p.measurements_b())},
              {"lambda", labels_json(p.hidden())},
              {"e", cells_json(p.table())}};
}

json to_json(const IntervalHVModel& m) {
  json pieces = json::array();
  for (const IntervalPiece& piece : m.pieces()) {
    json entry = interval_json(piece.interval);
    entry["kernel"] = cells_json(piece.kernel);
    pieces.push_back(std::move(entry));
  }
  return json{{"outcomes_a", labels_json(m.outcomes_a())},
              {"outcomes_b", labels_json(m.outcomes_b())},
              {"measurements_a", labels_json(m.measurements_a())},
              {"measurements_b", labels_json(m.measurements_b())},
              {"pieces", std::move(pieces)}};
}

json to_json(const IsoMap& iso) {
  json blocks = json::array();
  for (const auto& [name, intervals] : iso.images) {
    json image = json::array();
    for (const Interval& interval : intervals) image.push_back(interval_json(interval));
    blocks.push_back(json{{"block", name}, {"intervals", std::move(image)}});
  }
  return json{{"blocks", std::move(blocks)}};
}

json to_json(const PropertyWitness& witness) {
  json events = json::array();
  for (const WitnessEvent& event : witness.events) {
    events.push_back(json{{"scope", event.scope}, {"members", event.members}});
  }
  json cell = json::array();
  for (const auto& [factor, label] : witness.cell) {
    cell.push_back(json::array({factor, label}));
  }
  return json{{"events", std::move(events)},
              {"cell", std::move(cell)},
              {"lhs", format_rational(witness.lhs)},
              {"rhs", format_rational(witness.rhs)}};
}

json to_json(const PropertyReport& report) {
  json out{{"property", property_name(report.property)},
           {"holds", report.holds},
           {"violations", report.violation_count},
           {"truncated", report.truncated}};
  out["witness"] =
      report.witnesses.empty() ? json(nullptr) : to_json(report.witnesses.front());
  return out;
}

json to_json(const FeasibilityResult& result, const EmpiricalModel& e) {
  json out{{"feasible", result.feasible}};
  if (result.feasible) {
    json weights = json::object();
    for (const auto& [strategy, weight] : result.weights) {
      weights[strategy.name()] = format_rational(weight);
    }
    out["weights"] = std::move(weights);
    out["model"] = to_json(*result.model);
  } else {
    const Certificate& cert = *result.certificate;
    json coefficients = json::object();
    for (const auto& [cell, coeff] : cert.cell_coeffs) {
      std::string key = join_labels({e.outcomes_a().label(cell[0]),
                                     e.outcomes_b().label(cell[1]),
                                     e.measurements_a().label(cell[2]),
                                     e.measurements_b().label(cell[3])});
      coefficients[key] = format_rational(coeff);
    }
    out["certificate"] = json{{"coefficients", std::move(coefficients)},
                              {"value_on_e", format_rational(cert.value_on_e)},
                              {"strategy_max", format_rational(cert.strategy_max)}};
  }
  return out;
}

json to_json(const ChshResult& chsh, const EmpiricalModel& e) {
  json correlators = json::object();
  std::size_t index = 0;
  for (std::size_t ya = 0; ya < 2; ++ya) {
    for (std::size_t yb = 0; yb < 2; ++yb) {
      std::string key = join_labels(
          {e.measurements_a().label(ya), e.measurements_b().label(yb)});
      correlators[key] = format_rational(chsh.correlators[index++]);
    }
  }
  return json{{"value", format_rational(chsh.value)},
              {"max_symmetrized", format_rational(chsh.max_abs)},
              {"correlators", std::move(correlators)},
              {"classical_bound", format_rational(chsh_strategy_bound())}};
}

EmpiricalModel empirical_from_json(const json& j) {
  FiniteSpace xa = space_from_json(j, "outcomes_a");
  FiniteSpace xb = space_from_json(j, "outcomes_b");
  FiniteSpace ya = space_from_json(j, "measurements_a");
  FiniteSpace yb = space_from_json(j, "measurements_b");
  auto cells = cells_from_json(j, "e", 4);
  return EmpiricalModel::from_cells(std::move(xa), std::move(xb), std::move(ya),
                                    std::move(yb), cells);
}

HVModel hv_from_json(const json& j) {
  FiniteSpace xa = space_from_json(j, "outcomes_a");
  FiniteSpace xb = space_from_json(j, "outcomes_b");
  FiniteSpace ya = space_from_json(j, "measurements_a");
  FiniteSpace yb = space_from_json(j, "measurements_b");
  FiniteSpace hidden = space_from_json(j, "lambda");
  auto cells = cells_from_json(j, "e", 5);
  return HVModel::from_cells(std::move(xa), std::move(xb), std::move(ya),
                             std::move(yb), std::move(hidden), cells);
}

IntervalHVModel interval_from_json(const json& j) {
  FiniteSpace xa = space_from_json(j, "outcomes_a");
  FiniteSpace xb = space_from_json(j, "outcomes_b");
  FiniteSpace ya = space_from_json(j, "measurements_a");
  FiniteSpace yb = space_from_json(j, "measurements_b");
  if (!j.contains("pieces") || !j.at("pieces").is_array()) {
    throw std::invalid_argument("interval model JSON: missing \"pieces\" array");
  }
  std::vector<IntervalPiece> pieces;
  for (const json& entry : j.at("pieces")) {
    Interval interval = interval_from(entry);
    if (!entry.contains("kernel")) {
      throw std::invalid_argument("interval model JSON: piece without kernel");
    }
    auto cells = cells_from_json(entry, "kernel", 4);
    ProbTable kernel =
        ProbTable::from_cells({xa, xb, ya, yb}, cells);
    pieces.push_back(IntervalPiece{interval, std::move(kernel)});
  }
  return IntervalHVModel(std::move(xa), std::move(xb), std::move(ya), std::move(yb),
                         std::move(pieces));
}

bool is_hv_json(const json& j) { return j.is_object() && j.contains("lambda"); }

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << dump_json(j);
}

}  // namespace hvcanon
