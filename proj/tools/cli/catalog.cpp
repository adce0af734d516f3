#include "cli/catalog.hpp"

#include "cli/model_file.hpp"
#include "stromcheck/errors.hpp"

namespace stromcheck::cli {

namespace {

using json = nlohmann::json;

json term(double coeff, std::vector<std::string> factors) { return {{"coeff", coeff}, {"factors", factors}}; }

json base(const std::string& name, const std::string& description, int dim) {
  return {{"schema_version", kModelSchemaVersion},
          {"name", name},
          {"description", description},
          {"dimension", dim},
          {"complex_structure", "standard"},
          {"metric", "identity"}};
}

json torus6() {
  json d = base("torus6", "Flat complex 3-torus with flat connections", 6);
  d["structure_constants"] = json::array();
  d["connections"] = {{"nabla", {{"type", "flat"}}}, {"A", {{"type", "flat"}, {"rank", 1}}}};
  d["alpha"] = 1.0;
  d["expect"] = {{"kahler", true}, {"solves", true}};
  return d;
}

json iwasawa() {
  json d = base("iwasawa", "Iwasawa manifold with omega = i sum theta_j ^ conj(theta_j)", 6);
  d["coframe_differentials"] = {{"theta2", json::array({term(1.0, {"theta1", "theta3"})})}};
  d["metric"] = {{"scale", 2.0}};
  d["expect"] = {{"kahler", false}, {"balanced", true}};
  return d;
}

json sl2c(double t) {
  json d = base("sl2c", "SL(2,C) with the t-scaled coframe, Bismut nabla and trivial A", 6);
  d["coframe_differentials"] = {{"theta1", json::array({term(1.0 / t, {"theta2", "theta3"})})},
                                {"theta2", json::array({term(-1.0 / t, {"theta1", "theta3"})})},
                                {"theta3", json::array({term(1.0 / t, {"theta1", "theta2"})})}};
  d["connections"] = {{"nabla", {{"type", "bismut"}}}, {"A", {{"type", "flat"}, {"rank", 1}}}};
  d["alpha"] = "solve";
  d["expect"] = {{"solves", true}};
  return d;
}

json hopf4() {
  json d = base("hopf4", "Hopf surface model su(2) + R with the standard J", 4);
  d["coframe_differentials"] = {{"e2", json::array({term(1.0, {"e3", "e4"})})},
                                {"e3", json::array({term(1.0, {"e4", "e2"})})},
                                {"e4", json::array({term(1.0, {"e2", "e3"})})}};
  d["expect"] = {{"balanced", false}, {"gauduchon", true}};
  return d;
}

json standard_embedding() {
  json d = base("standard_embedding", "Flat torus with nabla = A = Chern connection", 6);
  d["structure_constants"] = json::array();
  d["connections"] = {{"nabla", {{"type", "chern"}}}, {"A", {{"type", "chern"}}}};
  d["alpha"] = 1.0;
  d["expect"] = {{"kahler", true}, {"solves", true}};
  return d;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"torus6", "flat torus, flat connections; Kahler, solves the system"},
      {"iwasawa", "Iwasawa manifold; balanced, not Kahler"},
      {"sl2c", "SL(2,C) with Bismut nabla; solves the system with alpha = t^2/4"},
      {"hopf4", "Hopf surface model; Gauduchon, not balanced"},
      {"standard_embedding", "flat torus with nabla = A; solves the system"},
  };
  return entries;
}

bool in_catalog(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return true;
  return false;
}

json catalog_document(const std::string& name, double t) {
  if (name == "torus6") return torus6();
  if (name == "iwasawa") return iwasawa();
  if (name == "sl2c") {
    if (!(t > 0.0)) throw ModelError("--t", "t must be positive");
    return sl2c(t);
  }
  if (name == "hopf4") return hopf4();
  if (name == "standard_embedding") return standard_embedding();
  throw ModelError("catalog", "unknown catalog entry '" + name + "'");
}

std::string catalog_export(const std::string& name, double t) { return catalog_document(name, t).dump(2) + "\n"; }

}  // namespace stromcheck::cli
