#include "cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>

#include "cli/catalog.hpp"
#include "cli/json_locator.hpp"
#include "cli/model_file.hpp"
#include "cli/report.hpp"
#include "stromcheck/errors.hpp"
#include "stromcheck/hesolver.hpp"

namespace stromcheck::cli {

namespace {

using json = nlohmann::json;

struct Settings {
  double tol = kResidualTolerance;
  std::string report = "text";
  bool strict_hym_nabla = true;
};

void print(std::ostream& out, const Settings& s, const json& doc) {
  out << (s.report == "machine" ? render_machine(doc) : render_text(doc));
}

int check_text(const std::string& text, const std::string& source, const Settings& s, std::ostream& out) {
  const LoadedModel model = load_model(text, source);
  const Evaluation e = evaluate(model, {s.tol, s.strict_hym_nabla});
  print(out, s, document(e.report));
  return e.pass ? kExitPass : kExitResidualFailure;
}

int run_all(const Settings& s, std::ostream& out) {
  // Entries are independent; evaluate concurrently and assemble in catalog order.
  std::vector<std::future<Evaluation>> jobs;
  for (const auto& entry : catalog_entries())
    jobs.push_back(std::async(std::launch::async, [&s, name = entry.name] {
      return evaluate(load_model(catalog_export(name), "catalog:" + name), {s.tol, s.strict_hym_nabla});
    }));
  json reports = json::array();
  bool pass = true;
  for (auto& job : jobs) {
    Evaluation e = job.get();
    pass = pass && e.pass;
    reports.push_back(std::move(e.report));
  }
  print(out, s, document({{"reports", reports}, {"status", pass ? "pass" : "fail"}}));
  return pass ? kExitPass : kExitResidualFailure;
}

std::vector<FourierMode> read_modes(const json& doc, const JsonLocator& loc, const std::string& source) {
  auto fail = [&](const std::string& pointer, const std::string& msg) -> void {
    throw ModelError(source + ":" + std::to_string(loc.line(pointer)) + ": " + pointer, msg);
  };
  std::vector<FourierMode> modes;
  if (!doc.contains("modes")) return modes;
  const json& list = doc.at("modes");
  if (!list.is_array()) fail("/modes", "modes must be a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "/modes/" + std::to_string(i);
    const json& m = list[i];
    if (!m.is_object()) fail(p, "mode must be an object");
    for (const auto& [key, value] : m.items()) {
      if (key != "kx" && key != "ky" && key != "cos" && key != "sin") fail(p + "/" + key, "unknown field '" + key + "'");
      if ((key == "kx" || key == "ky") ? !value.is_number_integer() : !value.is_number())
        fail(p + "/" + key, "wrong type for '" + key + "'");
    }
    modes.push_back({m.value("kx", 0), m.value("ky", 0), m.value("cos", 0.0), m.value("sin", 0.0)});
  }
  return modes;
}

int hesolve(const std::string& path, const Settings& s, std::ostream& out) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(path, std::string("JSON syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError(path, "source spec must be a JSON object");
  const JsonLocator loc(text);
  for (const auto& [key, value] : doc.items())
    if (key != "schema_version" && key != "N" && key != "constant" && key != "modes")
      throw ModelError(path + ":" + std::to_string(loc.line("/" + key)) + ": /" + key, "unknown field '" + key + "'");
  const int n = doc.value("N", 64);
  if (n < 4) throw ModelError(path + ":" + std::to_string(loc.line("/N")) + ": /N", "N must be at least 4");
  const double constant = doc.value("constant", 0.0);
  GridField source = GridField::zeros(n);
  try {
    source = band_limited(n, read_modes(doc, loc, path), constant);
  } catch (const DimensionMismatch& e) {
    throw ModelError(path + ":" + std::to_string(loc.line("/modes")) + ": /modes", e.what());
  }

  json r = {{"N", n}, {"mean", degree_check(source)}};
  try {
    const HeSolution sol = solve_he(source);
    json samples = json::array();
    for (int j = 0; j < n; ++j) {
      json row = json::array();
      for (int i = 0; i < n; ++i) row.push_back(sol.f(i, j));
      samples.push_back(std::move(row));
    }
    r["residual"] = sol.residual;
    r["status"] = "solved";
    if (s.report == "machine") r["solution"] = std::move(samples);
    else r["solution_sup_norm"] = sol.f.sup_norm();
    print(out, s, document({{"hesolve", r}}));
    return kExitPass;
  } catch (const Obstruction& e) {
    r["status"] = "obstructed";
    r["error"] = e.what();
    print(out, s, document({{"hesolve", r}}));
    return kExitResidualFailure;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residual checker for the Strominger system on invariant data"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--tol", s.tol, "Pass/fail tolerance on residual sup-norms")->check(CLI::PositiveNumber);
  app.add_option("--report", s.report, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--strict-hym-nabla,!--no-strict-hym-nabla", s.strict_hym_nabla,
               "Gate the result on the HYM condition for nabla (default on)");
  app.set_version_flag("--version", kToolVersion);

  std::string path;
  auto* check = app.add_subcommand("check", "Check a model file");
  check->add_option("file", path, "Model file (JSON)")->required();

  auto* catalog = app.add_subcommand("catalog", "Built-in example models");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  std::string name;
  bool all = false;
  double t = 2.0;
  auto* crun = catalog->add_subcommand("run", "Run a catalog entry");
  crun->add_option("name", name, "Entry name");
  crun->add_flag("--all", all, "Run every entry");
  crun->add_option("--t", t, "Scale parameter for sl2c");
  std::string output;
  auto* cexport = catalog->add_subcommand("export", "Write the model file of an entry");
  cexport->add_option("name", name, "Entry name")->required();
  cexport->add_option("--t", t, "Scale parameter for sl2c");
  cexport->add_option("-o,--output", output, "Write to a file instead of stdout");
  for (auto* sub : {check, catalog, list, crun, cexport}) sub->fallthrough();

  std::string spec;
  auto* he = app.add_subcommand("hesolve", "Solve the torus Hermite-Einstein reduction");
  he->add_option("spec", spec, "Source spec (JSON)")->required();
  he->fallthrough();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (check->parsed()) return check_text(read_file(path), path, s, out);
    if (he->parsed()) return hesolve(spec, s, out);
    if (list->parsed()) {
      for (const auto& e : catalog_entries()) out << e.name << "  " << e.summary << "\n";
      return kExitPass;
    }
    if (cexport->parsed()) {
      const std::string text = catalog_export(name, t);
      if (output.empty()) {
        out << text;
      } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) throw ModelError(output, "cannot write file");
        f << text;
      }
      return kExitPass;
    }
    if (crun->parsed()) {
      if (all) {
        if (!name.empty()) throw ModelError("catalog run", "give either a name or --all");
        return run_all(s, out);
      }
      if (name.empty()) throw ModelError("catalog run", "give an entry name or --all");
      return check_text(catalog_export(name, t), "catalog:" + name, s, out);
    }
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvariantViolation& e) {
    err << "error: invariant " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonIntegrable& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitResidualFailure;
  }
  return kExitInputError;
}

}  // namespace stromcheck::cli
