#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hvcanon/canonical.hpp"
#include "hvcanon/explore.hpp"
#include "hvcanon/generators.hpp"
#include "hvcanon/json_io.hpp"
#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"
#include "hvcanon/scenarios.hpp"
#include "hvcanon/solver.hpp"

namespace py = pybind11;

namespace {

using hvcanon::EmpiricalModel;
using hvcanon::HVModel;
using nlohmann::json;

// Every entry point speaks JSON text so probabilities cross the boundary as
// exact "num/den" strings; the Python package wraps these with json.loads.

HVModel parse_hv(const std::string& text) {
  return hvcanon::hv_from_json(json::parse(text));
}

EmpiricalModel parse_empirical(const std::string& text) {
  return hvcanon::empirical_from_json(json::parse(text));
}

std::string check(const std::string& model_text, const std::string& property) {
  json j = json::parse(model_text);
  std::map<hvcanon::HvProperty, hvcanon::PropertyReport> reports;
  if (j.contains("pieces")) {
    reports = hvcanon::check_interval_properties(hvcanon::interval_from_json(j));
  } else {
    reports = hvcanon::check_all(hvcanon::hv_from_json(j));
  }
  json out = json::object();
  if (property.empty()) {
    for (const auto& [p, report] : reports) {
      out[hvcanon::property_name(p)] = hvcanon::to_json(report);
    }
  } else {
    hvcanon::HvProperty p = hvcanon::property_from_name(property);
    out[property] = hvcanon::to_json(reports.at(p));
  }
  return hvcanon::dump_json(out);
}

bool realizes(const std::string& hv_text, const std::string& empirical_text) {
  return hvcanon::realizes(parse_hv(hv_text), parse_empirical(empirical_text));
}

std::string realized_empirical(const std::string& hv_text) {
  return hvcanon::dump_json(
      hvcanon::to_json(hvcanon::realized_empirical(parse_hv(hv_text))));
}

std::string canonicalize_text(const std::string& hv_text) {
  hvcanon::CanonicalResult result = hvcanon::canonicalize(parse_hv(hv_text));
  return hvcanon::dump_json(json{{"model", hvcanon::to_json(result.model)},
                                 {"iso", hvcanon::to_json(result.iso)}});
}

std::string restrict_model(const std::string& model_text,
                           const std::vector<std::vector<std::string>>& blocks_a,
                           const std::vector<std::vector<std::string>>& blocks_b) {
  json j = json::parse(model_text);
  auto partition = [](const hvcanon::FiniteSpace& base,
                      const std::vector<std::vector<std::string>>& blocks) {
    if (blocks.empty()) return hvcanon::Partition::singletons(base);
    return hvcanon::Partition(base, blocks);
  };
  if (hvcanon::is_hv_json(j)) {
    HVModel p = hvcanon::hv_from_json(j);
    hvcanon::RestrictionSpec spec{partition(p.outcomes_a(), blocks_a),
                                  partition(p.outcomes_b(), blocks_b)};
    return hvcanon::dump_json(hvcanon::to_json(hvcanon::restrict_model(p, spec)));
  }
  EmpiricalModel e = hvcanon::empirical_from_json(j);
  hvcanon::RestrictionSpec spec{partition(e.outcomes_a(), blocks_a),
                                partition(e.outcomes_b(), blocks_b)};
  return hvcanon::dump_json(hvcanon::to_json(hvcanon::restrict_model(e, spec)));
}

std::string solve_local(const std::string& empirical_text) {
  EmpiricalModel e = parse_empirical(empirical_text);
  return hvcanon::dump_json(hvcanon::to_json(hvcanon::solve_local(e), e));
}

std::string chsh(const std::string& empirical_text) {
  EmpiricalModel e = parse_empirical(empirical_text);
  return hvcanon::dump_json(hvcanon::to_json(hvcanon::chsh_value(e), e));
}

std::string random_model(std::uint64_t seed, const std::vector<std::size_t>& dims,
                         const std::string& constraint) {
  if (dims.size() != 5) {
    throw std::invalid_argument("dims needs five sizes: a, b, ya, yb, l");
  }
  hvcanon::ModelDims d{dims[0], dims[1], dims[2], dims[3], dims[4]};
  std::optional<hvcanon::HvProperty> p;
  if (!constraint.empty()) p = hvcanon::property_from_name(constraint);
  return hvcanon::dump_json(hvcanon::to_json(hvcanon::random_hv_model(seed, d, p)));
}

std::string scenario(const std::string& name) {
  if (name == "det") return hvcanon::dump_json(hvcanon::to_json(hvcanon::scenario_det()));
  if (name == "coin") return hvcanon::dump_json(hvcanon::to_json(hvcanon::scenario_coin()));
  if (name == "signal") {
    return hvcanon::dump_json(hvcanon::to_json(hvcanon::scenario_signal()));
  }
  if (name == "ldep") return hvcanon::dump_json(hvcanon::to_json(hvcanon::scenario_ldep()));
  if (name == "pr-box") {
    return hvcanon::dump_json(hvcanon::to_json(hvcanon::scenario_pr_box()));
  }
  throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_hvcanon, m) {
  m.doc() = "exact hidden-variable model toolkit (JSON-string interface)";
  m.def("check", &check, py::arg("model"), py::arg("property") = "",
        "Property reports for a hidden-variable or interval model.");
  m.def("realizes", &realizes, py::arg("model"), py::arg("empirical"),
        "Whether the model's observable marginal equals the empirical model.");
  m.def("realized_empirical", &realized_empirical, py::arg("model"),
        "Observable marginal of a hidden-variable model.");
  m.def("canonicalize", &canonicalize_text, py::arg("model"),
        "Unit-interval form of a model plus the block-to-interval map.");
  m.def("restrict", &restrict_model, py::arg("model"),
        py::arg("blocks_a") = std::vector<std::vector<std::string>>{},
        py::arg("blocks_b") = std::vector<std::vector<std::string>>{},
        "Blockwise coarsening of the outcome spaces.");
  m.def("solve_local", &solve_local, py::arg("empirical"),
        "Exact membership test for the local polytope, with certificate.");
  m.def("chsh", &chsh, py::arg("empirical"),
        "Four-correlator functional and its symmetrized maximum.");
  m.def("random_model", &random_model, py::arg("seed"), py::arg("dims"),
        py::arg("constraint") = "",
        "Seeded random model, optionally constrained to satisfy a property.");
  m.def("scenario", &scenario, py::arg("name"),
        "Built-in model: det, coin, signal, ldep, or pr-box.");
  m.def("property_names", [] {
    std::vector<std::string> names;
    for (hvcanon::HvProperty p : hvcanon::kAllProperties) {
      names.push_back(hvcanon::property_name(p));
    }
    return names;
  });
}
