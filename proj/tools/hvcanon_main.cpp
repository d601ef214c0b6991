#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hvcanon/canonical.hpp"
#include "hvcanon/explore.hpp"
#include "hvcanon/generators.hpp"
#include "hvcanon/json_io.hpp"
#include "hvcanon/models.hpp"
#include "hvcanon/properties.hpp"
#include "hvcanon/scenarios.hpp"
#include "hvcanon/solver.hpp"

namespace {

using hvcanon::EmpiricalModel;
using hvcanon::HVModel;
using hvcanon::HvProperty;
using hvcanon::PropertyReport;
using hvcanon::PropertyWitness;
using hvcanon::Rational;
using nlohmann::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string model_path;
  std::string empirical_path;
  std::string out_path;
  std::string out_dir;
  std::string format = "text";
  std::string property;
  std::string constraint;
  std::string name;
  std::string dims = "2,2,2,2,2";
  std::string blocks_a;
  std::string blocks_b;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool certificate = false;
};

hvcanon::ModelDims parse_dims(const std::string& text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      parts.push_back(std::stoull(piece));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --dims entry: \"" + piece + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 5) {
    throw std::invalid_argument("--dims needs five comma-separated sizes");
  }
  return hvcanon::ModelDims{parts[0], parts[1], parts[2], parts[3], parts[4]};
}

hvcanon::Partition parse_blocks(const hvcanon::FiniteSpace& base,
                                const std::string& spec) {
  if (spec.empty()) return hvcanon::Partition::singletons(base);
  std::vector<std::vector<std::string>> blocks;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t bar = spec.find('|', start);
    std::string block = spec.substr(
        start, bar == std::string::npos ? std::string::npos : bar - start);
    std::vector<std::string> members;
    std::size_t mstart = 0;
    while (mstart <= block.size()) {
      std::size_t plus = block.find('+', mstart);
      members.push_back(block.substr(
          mstart, plus == std::string::npos ? std::string::npos : plus - mstart));
      if (plus == std::string::npos) break;
      mstart = plus + 1;
    }
    blocks.push_back(std::move(members));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return hvcanon::Partition(base, std::move(blocks));
}

std::optional<std::string> provenance_date() {
  const char* text = std::getenv("SOURCE_DATE_EPOCH");
  if (!text) return std::nullopt;
  char* end = nullptr;
  long long epoch = std::strtoll(text, &end, 10);
  if (end == text || *end != '\0') return std::nullopt;
  std::time_t t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  if (!gmtime_r(&t, &tm)) return std::nullopt;
  char buffer[16];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%d", &tm);
  return std::string(buffer);
}

std::string witness_text(const PropertyWitness& witness) {
  std::string out = "events:";
  if (witness.events.empty()) out += " (none)";
  for (const auto& event : witness.events) {
    out += ' ' + event.scope + "={";
    for (std::size_t i = 0; i < event.members.size(); ++i) {
      if (i > 0) out += ',';
      out += event.members[i];
    }
    out += '}';
  }
  out += "; cell:";
  if (witness.cell.empty()) out += " (none)";
  for (const auto& [factor, label] : witness.cell) {
    out += ' ' + factor + '=' + label;
  }
  out += "; lhs=" + hvcanon::format_rational(witness.lhs);
  out += " rhs=" + hvcanon::format_rational(witness.rhs);
  return out;
}

void print_report_text(const PropertyReport& report) {
  std::cout << hvcanon::property_name(report.property) << ": "
            << (report.holds ? "holds" : "FAILS");
  if (!report.holds) {
    std::cout << " (" << report.violation_count << " violating instances)";
  }
  if (report.truncated) std::cout << " [event enumeration truncated]";
  std::cout << '\n';
  if (!report.witnesses.empty()) {
    std::cout << "  " << witness_text(report.witnesses.front()) << '\n';
  }
}

int run_check(const Options& opt) {
  json j = hvcanon::load_json_file(opt.model_path);
  std::map<HvProperty, PropertyReport> reports;
  if (j.contains("pieces")) {
    reports = hvcanon::check_interval_properties(hvcanon::interval_from_json(j));
  } else if (hvcanon::is_hv_json(j)) {
    reports = hvcanon::check_all(hvcanon::hv_from_json(j));
  } else {
    throw std::invalid_argument(
        "check needs a hidden-variable or interval model (empirical models "
        "have no hidden factor)");
  }
  if (!opt.property.empty()) {
    HvProperty wanted = hvcanon::property_from_name(opt.property);
    auto it = reports.find(wanted);
    std::map<HvProperty, PropertyReport> one;
    one.emplace(wanted, it->second);
    reports = std::move(one);
  }
  bool all_hold = true;
  if (opt.format == "json") {
    json out = json::object();
    for (const auto& [property, report] : reports) {
      out[hvcanon::property_name(property)] = hvcanon::to_json(report);
      all_hold = all_hold && report.holds;
    }
    std::cout << hvcanon::dump_json(out);
  } else {
    for (const auto& [property, report] : reports) {
      print_report_text(report);
      all_hold = all_hold && report.holds;
    }
  }
  return all_hold ? kExitHolds : kExitFails;
}

int run_realize(const Options& opt) {
  HVModel p = hvcanon::hv_from_json(hvcanon::load_json_file(opt.model_path));
  EmpiricalModel e =
      hvcanon::empirical_from_json(hvcanon::load_json_file(opt.empirical_path));
  bool holds = hvcanon::realizes(p, e);
  if (opt.format == "json") {
    std::cout << hvcanon::dump_json(json{{"realizes", holds}});
  } else {
    std::cout << "realizes: " << (holds ? "yes" : "no") << '\n';
  }
  return holds ? kExitHolds : kExitFails;
}

int run_canonicalize(const Options& opt) {
  HVModel p = hvcanon::hv_from_json(hvcanon::load_json_file(opt.model_path));
  hvcanon::CanonicalResult result = hvcanon::canonicalize(p);
  json out{{"model", hvcanon::to_json(result.model)},
           {"iso", hvcanon::to_json(result.iso)}};
  if (!opt.out_path.empty()) hvcanon::write_json_file(opt.out_path, out);
  if (opt.format == "json") {
    std::cout << hvcanon::dump_json(out);
  } else {
    std::cout << "pieces: " << result.model.pieces().size() << '\n';
    for (std::size_t i = 0; i < result.model.pieces().size(); ++i) {
      const auto& piece = result.model.pieces()[i];
      std::cout << "  [" << hvcanon::format_rational(piece.interval.lo) << ", "
                << hvcanon::format_rational(piece.interval.hi) << ")  block "
                << result.iso.images[i].first << '\n';
    }
  }
  return kExitHolds;
}

int run_restrict(const Options& opt) {
  json j = hvcanon::load_json_file(opt.model_path);
  json out;
  if (hvcanon::is_hv_json(j)) {
    HVModel p = hvcanon::hv_from_json(j);
    hvcanon::RestrictionSpec spec{parse_blocks(p.outcomes_a(), opt.blocks_a),
                                  parse_blocks(p.outcomes_b(), opt.blocks_b)};
    out = hvcanon::to_json(hvcanon::restrict_model(p, spec));
  } else {
    EmpiricalModel e = hvcanon::empirical_from_json(j);
    hvcanon::RestrictionSpec spec{parse_blocks(e.outcomes_a(), opt.blocks_a),
                                  parse_blocks(e.outcomes_b(), opt.blocks_b)};
    out = hvcanon::to_json(hvcanon::restrict_model(e, spec));
  }
  if (!opt.out_path.empty()) hvcanon::write_json_file(opt.out_path, out);
  std::cout << hvcanon::dump_json(out);
  return kExitHolds;
}

int run_solve_local(const Options& opt) {
  EmpiricalModel e =
      hvcanon::empirical_from_json(hvcanon::load_json_file(opt.empirical_path));
  hvcanon::FeasibilityResult result = hvcanon::solve_local(e);
  if (opt.format == "json") {
    json out = hvcanon::to_json(result, e);
    if (!opt.certificate && out.contains("certificate")) {
      // Certificate suppressed unless requested; verdict stays.
      out.erase("certificate");
    }
    std::cout << hvcanon::dump_json(out);
  } else {
    std::cout << "feasible: " << (result.feasible ? "yes" : "no") << '\n';
    if (result.feasible) {
      for (const auto& [strategy, weight] : result.weights) {
        std::cout << "  " << strategy.name() << ": "
                  << hvcanon::format_rational(weight) << '\n';
      }
    } else if (opt.certificate) {
      const auto& cert = *result.certificate;
      std::cout << "certificate value on e:  "
                << hvcanon::format_rational(cert.value_on_e) << '\n'
                << "max over strategies:     "
                << hvcanon::format_rational(cert.strategy_max) << '\n';
      for (const auto& [cell, coeff] : cert.cell_coeffs) {
        std::cout << "  " << e.outcomes_a().label(cell[0]) << ','
                  << e.outcomes_b().label(cell[1]) << ','
                  << e.measurements_a().label(cell[2]) << ','
                  << e.measurements_b().label(cell[3]) << ": "
                  << hvcanon::format_rational(coeff) << '\n';
      }
    }
  }
  return result.feasible ? kExitHolds : kExitFails;
}

int run_chsh(const Options& opt) {
  EmpiricalModel e =
      hvcanon::empirical_from_json(hvcanon::load_json_file(opt.empirical_path));
  hvcanon::ChshResult result = hvcanon::chsh_value(e);
  Rational bound = hvcanon::chsh_strategy_bound();
  if (opt.format == "json") {
    std::cout << hvcanon::dump_json(hvcanon::to_json(result, e));
  } else {
    std::cout << "value: " << hvcanon::format_rational(result.value) << '\n'
              << "max_symmetrized: " << hvcanon::format_rational(result.max_abs)
              << '\n'
              << "classical_bound: " << hvcanon::format_rational(bound) << '\n';
  }
  return result.max_abs <= bound ? kExitHolds : kExitFails;
}

int run_gen(const Options& opt) {
  std::optional<HvProperty> constraint;
  if (!opt.constraint.empty()) {
    constraint = hvcanon::property_from_name(opt.constraint);
  }
  HVModel model =
      hvcanon::random_hv_model(opt.seed, parse_dims(opt.dims), constraint);
  std::cout << hvcanon::dump_json(hvcanon::to_json(model));
  return kExitHolds;
}

int run_scenarios(const Options& opt) {
  json out;
  if (opt.name == "det") {
    out = hvcanon::to_json(hvcanon::scenario_det());
  } else if (opt.name == "coin") {
    out = hvcanon::to_json(hvcanon::scenario_coin());
  } else if (opt.name == "signal") {
    out = hvcanon::to_json(hvcanon::scenario_signal());
  } else if (opt.name == "ldep") {
    out = hvcanon::to_json(hvcanon::scenario_ldep());
  } else if (opt.name == "pr-box") {
    out = hvcanon::to_json(hvcanon::scenario_pr_box());
  } else {
    throw std::invalid_argument("unknown scenario \"" + opt.name +
                                "\" (expected det, coin, signal, ldep, pr-box)");
  }
  std::cout << hvcanon::dump_json(out);
  return kExitHolds;
}

std::string fixture_file_name(const std::string& premise,
                              const std::string& conclusion) {
  return premise + "_not_" + conclusion + ".json";
}

json provenance_json(std::uint64_t model_seed, const std::string& premise,
                     const std::string& conclusion, std::size_t trial) {
  json provenance{{"seed", std::to_string(model_seed)},
                  {"generator", premise},
                  {"premise", premise},
                  {"conclusion", conclusion},
                  {"trial", trial},
                  {"tool", "hvcanon explore"}};
  if (auto date = provenance_date()) provenance["date"] = *date;
  return provenance;
}

// Writes the counterexample with provenance, then reloads and re-verifies
// it from disk before reporting the path.
std::string write_fixture(const std::string& dir, const HVModel& model,
                          std::uint64_t model_seed, HvProperty premise,
                          HvProperty conclusion, std::size_t trial) {
  std::filesystem::create_directories(dir);
  std::string premise_name = hvcanon::property_name(premise);
  std::string conclusion_name = hvcanon::property_name(conclusion);
  std::string path =
      (std::filesystem::path(dir) / fixture_file_name(premise_name, conclusion_name))
          .string();
  json j = hvcanon::to_json(model);
  j["provenance"] = provenance_json(model_seed, premise_name, conclusion_name, trial);
  hvcanon::write_json_file(path, j);
  HVModel reloaded = hvcanon::hv_from_json(hvcanon::load_json_file(path));
  if (!hvcanon::check_property(reloaded, premise).holds ||
      hvcanon::check_property(reloaded, conclusion).holds) {
    throw std::logic_error("fixture failed re-verification: " + path);
  }
  return path;
}

int run_explore(const Options& opt) {
  hvcanon::ModelDims dims = parse_dims(opt.dims);
  hvcanon::ImplicationMatrix matrix =
      hvcanon::explore_implications(opt.seed, opt.trials, dims);

  json pairs = json::array();
  for (const auto& entry : matrix.entries) {
    json record{{"premise", hvcanon::property_name(entry.premise)},
                {"conclusion", hvcanon::property_name(entry.conclusion)}};
    if (entry.counterexample_found) {
      record["status"] = "counterexample";
      record["trial"] = entry.found_at_trial;
      record["seed"] = std::to_string(entry.model_seed);
      if (!opt.out_dir.empty()) {
        record["fixture"] =
            write_fixture(opt.out_dir, *entry.model, entry.model_seed,
                          entry.premise, entry.conclusion, entry.found_at_trial);
      }
    } else {
      record["status"] = "no-counterexample";
      record["trials"] = entry.trials_run;
    }
    pairs.push_back(std::move(record));
  }
  const auto& probe = matrix.pi_oi_to_locality;
  json conjunction{{"premise", "parameter-independence+outcome-independence"},
                   {"conclusion", "locality"},
                   {"models_checked", probe.trials_checked},
                   {"status", probe.counterexample_found ? "counterexample"
                                                         : "no-counterexample"}};
  if (probe.counterexample_found && !opt.out_dir.empty()) {
    std::filesystem::create_directories(opt.out_dir);
    std::string path = (std::filesystem::path(opt.out_dir) /
                        "parameter-and-outcome-independence_not_locality.json")
                           .string();
    json j = hvcanon::to_json(*probe.model);
    j["provenance"] =
        provenance_json(probe.model_seed, "parameter-independence+outcome-independence",
                        "locality", probe.found_at_trial);
    hvcanon::write_json_file(path, j);
    conjunction["fixture"] = path;
  }
  json out{{"seed", std::to_string(matrix.seed)},
           {"trials", matrix.trials},
           {"dims",
            {dims.outcomes_a, dims.outcomes_b, dims.measurements_a,
             dims.measurements_b, dims.hidden}},
           {"pairs", std::move(pairs)},
           {"conjunction", std::move(conjunction)}};
  if (opt.format == "json") {
    std::cout << hvcanon::dump_json(out);
  } else {
    for (const auto& record : out.at("pairs")) {
      std::cout << record.at("premise").get<std::string>() << " => "
                << record.at("conclusion").get<std::string>() << ": ";
      if (record.at("status") == "counterexample") {
        std::cout << "counterexample at trial " << record.at("trial")
                  << " (seed " << record.at("seed").get<std::string>() << ")";
        if (record.contains("fixture")) {
          std::cout << " -> " << record.at("fixture").get<std::string>();
        }
      } else {
        std::cout << "no counterexample in " << record.at("trials") << " trials";
      }
      std::cout << '\n';
    }
    std::cout << "parameter-independence+outcome-independence => locality: "
              << (probe.counterexample_found ? "counterexample"
                                             : "no counterexample")
              << " (" << probe.trials_checked << " models checked)\n";
  }
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for hidden-variable models of bipartite experiments"};
  app.require_subcommand(1);
  Options opt;
  int rc = kExitHolds;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* check = app.add_subcommand(
      "check", "run property checks on a hidden-variable or interval model");
  check->add_option("--model", opt.model_path, "model JSON file")->required();
  check->add_option("--property", opt.property,
                    "check a single property instead of all six");
  add_format(check);
  check->callback([&] { rc = run_check(opt); });

  CLI::App* realize = app.add_subcommand(
      "realize", "test whether a hidden-variable model realizes an empirical model");
  realize->add_option("--model", opt.model_path, "hidden-variable model JSON")
      ->required();
  realize->add_option("--empirical", opt.empirical_path, "empirical model JSON")
      ->required();
  add_format(realize);
  realize->callback([&] { rc = run_realize(opt); });

  CLI::App* canonicalize = app.add_subcommand(
      "canonicalize",
      "transform a model onto the unit-interval hidden space");
  canonicalize->add_option("--model", opt.model_path, "model JSON file")->required();
  canonicalize->add_option("--out", opt.out_path,
                           "write the interval model and isomorphism here");
  add_format(canonicalize);
  canonicalize->callback([&] { rc = run_canonicalize(opt); });

  CLI::App* restrict_cmd = app.add_subcommand(
      "restrict", "coarsen the outcome spaces blockwise");
  restrict_cmd->add_option("--model", opt.model_path,
                           "hidden-variable or empirical model JSON")
      ->required();
  restrict_cmd->add_option("--blocks-a", opt.blocks_a,
                           "partition of side-a outcomes, e.g. x0+x1|x2");
  restrict_cmd->add_option("--blocks-b", opt.blocks_b,
                           "partition of side-b outcomes");
  restrict_cmd->add_option("--out", opt.out_path, "also write the result here");
  add_format(restrict_cmd);
  restrict_cmd->callback([&] { rc = run_restrict(opt); });

  CLI::App* solve = app.add_subcommand(
      "solve-local",
      "decide membership in the local polytope over deterministic strategies");
  solve->add_option("--empirical", opt.empirical_path, "empirical model JSON")
      ->required();
  solve->add_flag("--certificate", opt.certificate,
                  "include the separating certificate when infeasible");
  add_format(solve);
  solve->callback([&] { rc = run_solve_local(opt); });

  CLI::App* chsh = app.add_subcommand("chsh", "evaluate the four-correlator functional");
  chsh->add_option("--empirical", opt.empirical_path, "empirical model JSON")
      ->required();
  add_format(chsh);
  chsh->callback([&] { rc = run_chsh(opt); });

  CLI::App* gen = app.add_subcommand("gen", "generate a random model");
  gen->add_option("--seed", opt.seed, "random seed")->required();
  gen->add_option("--dims", opt.dims, "sizes a,b,ya,yb,l")->required();
  gen->add_option("--constraint", opt.constraint,
                  "property the generated model must satisfy");
  add_format(gen);
  gen->callback([&] { rc = run_gen(opt); });

  CLI::App* explore = app.add_subcommand(
      "explore", "probe all pairwise property implications empirically");
  explore->add_option("--seed", opt.seed, "random seed")->required();
  explore->add_option("--trials", opt.trials, "trials per ordered pair")->required();
  explore->add_option("--dims", opt.dims, "sizes a,b,ya,yb,l");
  explore->add_option("--out-dir", opt.out_dir,
                      "write counterexample fixtures into this directory");
  add_format(explore);
  explore->callback([&] { rc = run_explore(opt); });

  CLI::App* scenarios = app.add_subcommand("scenarios", "emit a built-in model");
  scenarios->add_option("--name", opt.name, "det, coin, signal, ldep, or pr-box")
      ->required();
  add_format(scenarios);
  scenarios->callback([&] { rc = run_scenarios(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hvcanon: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return rc;
}
