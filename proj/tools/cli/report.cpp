#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace stromcheck::cli {

namespace {

using json = nlohmann::json;

double clean(double v) { return v == 0.0 ? 0.0 : v; }  // no negative zero in reports

json hym(const HymResidual& r) { return {{"einstein", clean(r.einstein)}, {"f02", clean(r.f02)}}; }

json lee_coefficients(const Form& theta, int dim) {
  json out = json::array();
  for (int i = 0; i < dim; ++i) out.push_back(clean(theta.coefficient(Blade(1U << i)).real()));
  return out;
}

void emit(std::ostringstream& out, const json& v, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : v.items()) {  // std::map: sorted keys
        if (!first) out << ",\n";
        first = false;
        out << pad << json(key).dump() << ": ";
        emit(out, value, indent, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        emit(out, v[i], indent, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", clean(d));
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

void text_lines(std::ostringstream& out, const json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) text_lines(out, value, prefix.empty() ? key : prefix + "." + key);
    return;
  }
  out << prefix << " = ";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", clean(v.get<double>()));
    out << buf;
  } else if (v.is_array()) {
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ", ";
      if (v[i].is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", clean(v[i].get<double>()));
        out << buf;
      } else {
        out << v[i].dump();
      }
    }
    out << "]";
  } else if (v.is_string()) {
    out << v.get<std::string>();
  } else {
    out << v.dump();
  }
  out << "\n";
}

}  // namespace

Evaluation evaluate(const LoadedModel& model, const EvaluateOptions& options) {
  const HermitianData& h = model.h;
  const auto& alg = h.alg();
  json r;
  r["model"] = model.name;
  r["options"] = {{"tolerance", options.tol}, {"strict_hym_nabla", options.strict_hym_nabla}};

  const UnimodularityReport uni = is_unimodular(alg);
  r["structure"] = {{"dimension", alg.dim()},
                    {"jacobi", clean(check_jacobi(alg))},
                    {"d_squared", clean(d_squared_residual(alg))},
                    {"nijenhuis", clean(nijenhuis(alg, h.j()))},
                    {"unimodular", uni.unimodular}};

  const Classification c = classify(h, options.tol);
  const DilatinoResidual dil = dilatino_residual(h);
  r["hermitian"] = {{"d_omega", clean(c.d_omega)},
                    {"d_omega_n1", clean(c.d_omega_n1)},
                    {"ddc_omega_n1", clean(c.ddc_omega_n1)},
                    {"lee_norm", clean(c.lee_norm)},
                    {"codiff_lee_norm", clean(c.codiff_lee_norm)},
                    {"lee_form", lee_coefficients(lee_form(h), h.dim())},
                    {"kahler", c.kahler},
                    {"balanced", c.balanced},
                    {"gauduchon", c.gauduchon},
                    {"omega_norm", clean(omega_norm(h))},
                    {"dilatino", clean(dil.dilatino)},
                    {"conformally_balanced", clean(dil.conformally_balanced)},
                    {"d_Omega", clean(holomorphic_volume_closedness(h))}};

  std::map<std::string, bool> actual = {{"kahler", c.kahler}, {"balanced", c.balanced}, {"gauduchon", c.gauduchon}};
  bool pass = true;

  if (model.strominger) {
    const SystemReport s = check_system(*model.strominger, {options.tol, options.strict_hym_nabla});
    json alpha = {{"mode", s.alpha_solution ? "solve" : "fixed"}, {"used", clean(s.alpha_used)}};
    if (s.alpha_solution) {
      alpha["outcome"] = to_string(s.alpha_solution->outcome);
      alpha["residual"] = clean(s.alpha_solution->residual);
    }
    r["strominger"] = {
        {"alpha", alpha},
        {"residuals",
         {{"hym_a", hym(s.hym_a)},
          {"hym_nabla", hym(s.hym_nabla)},
          {"conformally_balanced", clean(s.conformally_balanced)},
          {"dilatino", clean(s.dilatino)},
          {"bianchi", clean(s.bianchi)},
          {"d_Omega", clean(s.d_big_omega)}}},
        {"flags",
         {{"hym_a", s.flags.hym_a},
          {"hym_nabla", s.flags.hym_nabla},
          {"conformally_balanced", s.flags.conformally_balanced},
          {"bianchi", s.flags.bianchi}}},
        {"hym_nabla_enforced", s.hym_nabla_enforced},
        {"informational",
         {{"nabla_metric", clean(s.nabla_metric)},
          {"nabla_complex", clean(s.nabla_complex)},
          {"a_unitarity", clean(s.a_unitarity)}}},
        {"solves", s.solves}};
    actual["solves"] = s.solves;
    actual["bianchi"] = s.flags.bianchi;
    actual["hym_a"] = s.flags.hym_a;
    actual["hym_nabla"] = s.flags.hym_nabla;
    actual["conformally_balanced"] = s.flags.conformally_balanced;
    // An explicit "solves" expectation replaces the default gate.
    pass = s.solves || model.expectations.count("solves");
  }

  if (!model.expectations.empty()) {
    json e = json::object();
    for (const auto& [key, expected] : model.expectations) {
      const auto it = actual.find(key);
      const bool known = it != actual.end();
      const bool met = known && it->second == expected;
      e[key] = {{"expected", expected}, {"actual", known ? json(it->second) : json(nullptr)}, {"met", met}};
      if (!met) pass = false;
    }
    r["expectations"] = e;
  }

  r["status"] = pass ? "pass" : "fail";
  return {r, pass};
}

json document(json body) {
  body["schema_version"] = kReportSchemaVersion;
  body["tool"] = {{"name", "stromcheck"}, {"version", kToolVersion}};
  return body;
}

std::string render_machine(const json& doc) {
  std::ostringstream out;
  emit(out, doc, 2, 0);
  out << "\n";
  return out.str();
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  if (doc.contains("reports")) {
    for (const auto& r : doc.at("reports")) {
      json one = r;
      text_lines(out, one, "");
      out << "\n";
    }
    return out.str();
  }
  text_lines(out, doc, "");
  return out.str();
}

}  // namespace stromcheck::cli
