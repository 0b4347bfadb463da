#include "nucdim/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nucdim/dad.hpp"
#include "nucdim/errors.hpp"
#include "nucdim/finite_groupoid.hpp"
#include "nucdim/graph.hpp"
#include "nucdim/groupoid.hpp"
#include "nucdim/paths.hpp"
#include "nucdim/pipeline.hpp"
#include "nucdim/twists.hpp"
#include "nucdim/unfurl.hpp"

namespace nucdim {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::UsageError, "cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t closure_cap_from_env(std::size_t fallback) {
  const char* env = std::getenv("GROUPOID_DIM_CAP");
  if (!env) return fallback;
  try {
    long long v = std::stoll(env);
    if (v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  return fallback;
}

FiniteGroup load_group(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return FiniteGroup::from_json(read_file(spec));
  return FiniteGroup::named(spec);
}

// {"points": ["a", ...], "action": [[...], ...]} with one row per group
// element mapping point indices.
std::pair<std::vector<std::string>, std::vector<std::vector<int>>> load_action(
    const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j.contains("action"))
    fail(ErrorKind::ParseError, "action file needs \"points\" and \"action\"");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) points.push_back(p.get<std::string>());
  std::vector<std::vector<int>> action;
  for (const auto& row : j["action"]) {
    std::vector<int> r;
    for (const auto& v : row) r.push_back(v.get<int>());
    action.push_back(std::move(r));
  }
  return {std::move(points), std::move(action)};
}

ordered_json spectrum_json(const FiniteGroupoid& g,
                           const std::vector<SpectrumEntry>& entries) {
  ordered_json out = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json je;
    je["orbit"] = ordered_json::array();
    for (int u : e.orbit) je["orbit"].push_back(g.label(u));
    je["isotropy_degree"] = e.isotropy_degree;
    je["induced_dimension"] = e.induced_dimension;
    je["multiplicity"] = e.multiplicity;
    out.push_back(je);
  }
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::VerificationFailed:
    case ErrorKind::BoundViolated:
      return 2;
    case ErrorKind::UsageError:
      return 64;
    default:
      return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"structure analysis and nuclear-dimension bound evaluation for "
               "graph and finite groupoids"};
  app.require_subcommand(1);

  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "seed for the numerical routines");

  // analyze
  std::string analyze_graph;
  auto* analyze = app.add_subcommand(
      "analyze", "run the certified bound pipeline on a graph JSON file");
  analyze->add_option("graph", analyze_graph, "graph JSON file")->required();
  std::size_t analyze_depth = 64;
  analyze->add_option("--depth", analyze_depth, "ray truncation depth");

  // unfurl
  std::string unfurl_graph, unfurl_format = "json";
  std::size_t unfurl_depth = 16;
  auto* unfurl_cmd = app.add_subcommand("unfurl", "emit the unfurled graph F");
  unfurl_cmd->add_option("graph", unfurl_graph, "graph JSON file")->required();
  unfurl_cmd->add_option("--depth", unfurl_depth, "ray truncation depth T");
  unfurl_cmd->add_option("--format", unfurl_format, "json or dot");
  bool unfurl_dot = false, unfurl_json_flag = false;
  unfurl_cmd->add_flag("--dot", unfurl_dot, "emit DOT");
  unfurl_cmd->add_flag("--json", unfurl_json_flag, "emit graph JSON");

  // paths
  std::string paths_graph;
  bool paths_json = false;
  auto* paths_cmd =
      app.add_subcommand("paths", "list E^infinity (all infinite paths)");
  paths_cmd->add_option("graph", paths_graph, "graph JSON file")->required();
  paths_cmd->add_flag("--json", paths_json, "emit JSON");

  // compose
  std::string compose_graph;
  std::vector<std::string> compose_elements;
  bool compose_invert = false;
  auto* compose_cmd = app.add_subcommand(
      "compose", "groupoid arithmetic on element literals \"(x | k | y)\"");
  compose_cmd->add_option("graph", compose_graph, "graph JSON file")->required();
  compose_cmd->add_option("elements", compose_elements, "element literals")
      ->required();
  compose_cmd->add_flag("--invert", compose_invert,
                        "invert the single given element");

  // spectrum
  std::string spec_group, spec_action;
  bool spec_json = false, spec_series = false;
  std::int64_t spec_M = 0;
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "orbits, isotropy and induced representation dimensions");
  spectrum_cmd->add_option("--group", spec_group,
                           "named group (S3, Z/n, Q8, Klein4, D/n, S4, A4) or "
                           "a JSON multiplication table file")
      ->required();
  spectrum_cmd->add_option("--action", spec_action,
                           "action JSON file (points + per-element images)");
  spectrum_cmd->add_flag("--json", spec_json, "emit JSON");
  spectrum_cmd->add_flag("--series", spec_series, "include the composition series");
  spectrum_cmd->add_option("--max", spec_M, "check M-subhomogeneity");

  // twist
  std::string twist_group, twist_action, twist_cocycle;
  std::int64_t twist_bound = 0;
  bool twist_json = false;
  auto* twist_cmd = app.add_subcommand(
      "twist", "twisted algebra decomposition and bound checks");
  twist_cmd->add_option("--group", twist_group, "group name or JSON file")
      ->required();
  twist_cmd->add_option("--action", twist_action, "action JSON file");
  twist_cmd->add_option("--cocycle", twist_cocycle,
                        "cocycle JSON file (omitted pairs default to 1)");
  twist_cmd->add_option("--bound", twist_bound, "check degrees <= M");
  twist_cmd->add_flag("--json", twist_json, "emit JSON");

  // dad
  std::string dad_graph;
  int dad_dmax = 1;
  auto* dad_cmd = app.add_subcommand(
      "dad", "dynamic asymptotic dimension certificate on the image fragment");
  dad_cmd->add_option("graph", dad_graph, "graph JSON file")->required();
  dad_cmd->add_option("--dmax", dad_dmax, "largest d to try");

  // bound
  std::string bound_formula;
  auto* bound_cmd =
      app.add_subcommand("bound", "evaluate a nuclear-dimension bound formula");
  bound_cmd->add_option("formula", bound_formula, "formula id")->required();
  bool bound_json = false;
  bound_cmd->add_flag("--json", bound_json, "emit the full report");
  std::map<std::string, std::int64_t> bound_inputs;
  for (const char* key : {"d", "n", "supPrim", "dimG0", "dad", "dimSdual",
                          "dimNucIdeal", "dimNucQuotient", "dimMhat"}) {
    bound_inputs[key] = -1;
    bound_cmd->add_option("--" + std::string(key), bound_inputs[key]);
  }

  std::vector<const char*> argv;
  argv.push_back("nucdim");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 64;
  }

  std::size_t cap = closure_cap_from_env(kDefaultClosureCap);

  try {
    if (*analyze) {
      auto g = DirectedGraph::from_json(read_file(analyze_graph));
      PipelineOptions options;
      options.seed = seed;
      options.depth = analyze_depth;
      options.closure_cap = cap;
      out << certified_pipeline(g, options).to_json() << "\n";
      return 0;
    }

    if (*unfurl_cmd) {
      auto g = DirectedGraph::from_json(read_file(unfurl_graph));
      UnfurledGraph f = unfurl(g, unfurl_depth);
      GraphPtr F = f.materialized(unfurl_depth);
      if (unfurl_dot) unfurl_format = "dot";
      if (unfurl_json_flag) unfurl_format = "json";
      if (unfurl_format == "dot") {
        out << F->to_dot();
      } else if (unfurl_format == "json") {
        out << F->to_json() << "\n";
      } else {
        fail(ErrorKind::UsageError, "unknown format \"" + unfurl_format + "\"");
      }
      return 0;
    }

    if (*paths_cmd) {
      auto g = DirectedGraph::from_json(read_file(paths_graph));
      auto paths = enumerate_infinite_paths(g);
      if (paths_json) {
        ordered_json j = ordered_json::array();
        for (const auto& x : paths) j.push_back(x.to_literal());
        out << j.dump(2) << "\n";
      } else {
        for (const auto& x : paths) out << x.to_literal() << "\n";
      }
      return 0;
    }

    if (*compose_cmd) {
      auto g = DirectedGraph::from_json(read_file(compose_graph));
      if (compose_invert) {
        if (compose_elements.size() != 1)
          fail(ErrorKind::UsageError, "--invert takes exactly one element");
        out << inverse(GroupoidElement::parse(g, compose_elements[0])).to_literal()
            << "\n";
        return 0;
      }
      GroupoidElement acc = GroupoidElement::parse(g, compose_elements.front());
      for (std::size_t i = 1; i < compose_elements.size(); ++i)
        acc = compose(acc, GroupoidElement::parse(g, compose_elements[i]));
      out << acc.to_literal() << "\n";
      return 0;
    }

    if (*spectrum_cmd) {
      FiniteGroup h = load_group(spec_group);
      std::unique_ptr<FiniteGroupoid> g;
      if (spec_action.empty()) {
        g = std::make_unique<FiniteGroupoid>(FiniteGroupoid::from_group(h));
      } else {
        auto [points, action] = load_action(spec_action);
        g = std::make_unique<FiniteGroupoid>(
            transformation_groupoid(h, points, action));
      }
      auto entries = spectrum(*g, seed);
      ordered_json j;
      j["elements"] = g->size();
      j["units"] = g->units().size();
      j["entries"] = spectrum_json(*g, entries);
      std::int64_t max_dim = 0;
      for (const auto& e : entries) max_dim = std::max(max_dim, e.induced_dimension);
      j["max_induced_dimension"] = max_dim;
      if (spec_M > 0) j["subhomogeneous"] = is_subhomogeneous(*g, spec_M, seed);
      if (spec_series) {
        auto series = composition_series(*g, seed);
        ordered_json js;
        js["applicable"] = series.applicable;
        if (!series.applicable) {
          js["witness_unit"] = g->label(series.non_abelian_witness_unit);
        } else {
          js["thresholds"] = series.thresholds;
          js["restriction_check_passed"] = series.restriction_check_passed;
          js["prim"] = ordered_json::array();
          for (const auto& entries_n : series.prim)
            js["prim"].push_back(spectrum_json(*g, entries_n));
        }
        j["composition_series"] = js;
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*twist_cmd) {
      FiniteGroup h = load_group(twist_group);
      std::unique_ptr<FiniteGroupoid> g;
      if (twist_action.empty()) {
        g = std::make_unique<FiniteGroupoid>(FiniteGroupoid::from_group(h));
      } else {
        auto [points, action] = load_action(twist_action);
        g = std::make_unique<FiniteGroupoid>(
            transformation_groupoid(h, points, action));
      }
      TwoCocycle sigma = twist_cocycle.empty()
                             ? TwoCocycle::trivial(*g)
                             : TwoCocycle::from_json(*g, read_file(twist_cocycle));
      auto check = validate_cocycle(sigma);
      if (!check.valid) fail(ErrorKind::InvalidCocycle, check.violation);
      StructureAlgebra algebra(*g, sigma);
      auto degrees = wedderburn_degrees(algebra, seed);
      ordered_json j;
      j["dimension"] = algebra.dimension();
      j["degrees"] = degrees;
      if (twist_bound > 0) {
        auto report = check_twist_bound(*g, sigma, twist_bound, seed);
        j["bound"] = report.bound;
        j["max_fiber"] = report.max_fiber;
        j["max_degree"] = report.max_degree;
        j["bound_holds"] = true;  // check_twist_bound throws otherwise
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*dad_cmd) {
      auto g = DirectedGraph::from_json(read_file(dad_graph));
      auto f = std::make_shared<UnfurledGraph>(unfurl(g, 64));
      auto handle = unfurl_oracle(f);
      ElementUniverse universe = ElementUniverse::build(g);
      std::vector<std::string> seed_keys;
      for (std::size_t i = 0; i < universe.elements.size(); ++i)
        seed_keys.push_back(handle->key_of(upsilon(*f, universe.element(i))));
      GroupoidFragment fragment =
          GroupoidFragment::make(handle->oracle(), seed_keys);
      auto cert = search_dad(fragment, dad_dmax, cap, seed);
      ordered_json j;
      j["fragment_size"] = fragment.elements.size();
      if (cert) {
        j["d"] = cert->d;
        j["covers"] = ordered_json::array();
        for (const auto& cover : cert->covers)
          j["covers"].push_back(std::vector<std::string>(cover.begin(), cover.end()));
        j["closure_sizes"] = ordered_json::array();
        for (const auto& cl : cert->closures) j["closure_sizes"].push_back(cl.size());
        j["verified"] = verify_dad_certificate(*cert).ok;
      } else {
        j["d"] = nullptr;
        j["verified"] = false;
        j["note"] = "no certificate found up to dmax (not a proof of absence)";
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*bound_cmd) {
      std::map<std::string, std::int64_t> inputs;
      for (const auto& [k, v] : bound_inputs)
        if (v >= 0) inputs[k] = v;
      BoundReport report = evaluate_bound(bound_formula, inputs);
      if (bound_json) {
        out << report.to_json() << "\n";
      } else {
        out << report.bound << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  }

  err << "no subcommand\n";
  return 64;
}

}  // namespace nucdim
