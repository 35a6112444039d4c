#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "k3orders/errors.hpp"
#include "k3orders/normal_form.hpp"
#include "k3orders/pipeline.hpp"
#include "k3orders/scenario.hpp"

namespace {

using namespace k3orders;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

int emit_report(const Report& rep, bool json, bool quiet) {
  if (json) {
    std::cout << rep.to_json().dump(2) << "\n";
  } else {
    std::cout << rep.to_text(quiet);
  }
  return rep.passed() ? kExitPass : kExitCheckFailed;
}

int run_snf(const std::string& path, bool json) {
  Json j = load_json(path);
  const Json& body = j.is_object() ? require_field(j, "matrix", "") : j;
  const IntMatrix m = matrix_from_json(body, j.is_object() ? "matrix" : "");
  const SnfResult snf = smith_normal_form(m);
  if (json) {
    Json out;
    out["diagonal"] = intvec_to_json(snf.diagonal());
    out["d"] = matrix_to_json(snf.d);
    out["u"] = matrix_to_json(snf.u);
    out["v"] = matrix_to_json(snf.v);
    out["rank"] = snf.rank();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "diagonal: " << to_string(snf.diagonal()) << "\n";
    std::cout << "u =\n" << to_string(snf.u);
    std::cout << "v =\n" << to_string(snf.v);
  }
  return kExitPass;
}

int run_h1(const std::string& path, bool json) {
  Json j = load_json(path);
  const Json& sub = require_field(j, "sublattice", "");
  IntMatrix gram = matrix_from_json(require_field(sub, "gram", "sublattice"),
                                    "sublattice.gram");
  if (!gram.is_symmetric()) {
    throw SchemaError("sublattice.gram", "matrix is not symmetric");
  }
  const Json& inv = require_field(j, "involution", "");
  IntMatrix m = matrix_from_json(require_field(inv, "matrix", "involution"),
                                 "involution.matrix");
  const Int order =
      int_from_json(require_field(inv, "order", "involution"), "involution.order");
  if (order < 1 || order > 1000000) {
    throw SchemaError("involution.order", "expected an order in [1, 10^6]");
  }
  const Lattice lattice(std::move(gram));
  const CyclicAction action = CyclicAction::with_declared_order(
      lattice, m, static_cast<unsigned>(order));
  const CocycleClasses classes(action);
  const FinAbGroup& g = classes.group();
  if (json) {
    Json out;
    out["group"] = g.to_string();
    Json factors = Json::array();
    for (const Int& f : g.invariant_factors) factors.push_back(int_to_json(f));
    out["factors"] = std::move(factors);
    Json gens = Json::array();
    for (const IntVec& v : g.generators) gens.push_back(intvec_to_json(v));
    out["generators"] = std::move(gens);
    Json kb = Json::array();
    for (const IntVec& v : classes.kernel_basis()) kb.push_back(intvec_to_json(v));
    out["kernel_basis"] = std::move(kb);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "H^1 = " << g.to_string() << "\n";
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      std::cout << "  generator " << (i + 1) << " (order "
                << g.invariant_factors[i] << "): "
                << lattice.format_class(g.generators[i]) << "\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verify: lattice-theoretic certificates for involutions on K3-type "
      "lattices and the orders they bound"};
  app.require_subcommand(1);

  bool json = false, quiet = false;
  std::size_t list_cap = 256;
  app.add_flag("--json", json, "emit reports as JSON");
  app.add_flag("--quiet", quiet, "one line per scenario (text mode only)");
  app.add_option("--list-cap", list_cap,
                 "maximum number of order classes to materialize")
      ->capture_default_str();

  auto* sextic = app.add_subcommand(
      "p2-sextic", "double plane branched over a sextic, rank-n model");
  std::size_t n = 3;
  sextic->add_option("--n", n, "lattice rank, between 3 and 18")->required();

  app.add_subcommand("quadric", "rank-4 model over the smooth quadric");
  app.add_subcommand("hirzebruch2", "rank-5 model over the Hirzebruch surface F2");

  auto* file = app.add_subcommand("file", "run a scenario from a JSON file");
  std::string file_path;
  file->add_option("path", file_path, "scenario JSON file")->required();

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix file");
  std::string snf_path;
  snf->add_option("path", snf_path, "JSON matrix file")->required();

  auto* h1cmd = app.add_subcommand(
      "h1", "cohomology of a cyclic action given as JSON (no embedding needed)");
  std::string h1_path;
  h1cmd->add_option("path", h1_path, "JSON file with sublattice + involution")
      ->required();

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitBadInput;
  }

  try {
    if (sextic->parsed()) {
      return emit_report(run_scenario(builtin_p2_sextic(n), list_cap), json, quiet);
    }
    if (app.got_subcommand("quadric")) {
      return emit_report(run_scenario(builtin_quadric(), list_cap), json, quiet);
    }
    if (app.got_subcommand("hirzebruch2")) {
      return emit_report(run_scenario(builtin_hirzebruch2(), list_cap), json, quiet);
    }
    if (file->parsed()) {
      const Scenario sc = scenario_from_json(load_json(file_path));
      return emit_report(run_scenario(sc, list_cap), json, quiet);
    }
    if (snf->parsed()) return run_snf(snf_path, json);
    if (h1cmd->parsed()) return run_h1(h1_path, json);
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << (e.path.empty() ? "<root>" : e.path)
              << ": " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const OutOfRangeNError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitBadInput;
}
