#pragma once

// Report documents. The machine form is JSON with sorted keys and every
// floating-point value printed with 17 significant digits, so identical
// inputs give byte-identical output.

#include <string>

#include <json.hpp>

#include "cli/model_file.hpp"

namespace stromcheck::cli {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct EvaluateOptions {
  double tol = kResidualTolerance;
  bool strict_hym_nabla = true;
};

struct Evaluation {
  nlohmann::json report;
  bool pass = false;
};

Evaluation evaluate(const LoadedModel& model, const EvaluateOptions& options);

// Wraps one or more reports with the tool and schema header.
nlohmann::json document(nlohmann::json body);

std::string render_machine(const nlohmann::json& doc);
std::string render_text(const nlohmann::json& doc);

}  // namespace stromcheck::cli
