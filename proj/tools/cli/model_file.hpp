#pragma once

// JSON model files. Indices are 1-based throughout. See README.md for the
// full schema; the short version:
//
//   schema_version     1
//   name               string
//   dimension          even integer 2n
//   structure_constants      [[i, j, k, v], ...]  meaning [e_i, e_j] = v e_k
//   coframe_differentials    {"theta2": [{"coeff": [re, im], "factors": ["theta1", "theta3"]}], ...}
//                            (keys theta<j> or e<k>; factors e<k>, theta<j>, thetabar<j>)
//   complex_structure  "standard" | matrix with J e_i = sum_k J[k][i] e_k
//   metric             "identity" | {"scale": c} | matrix
//   omega_form         optional list of terms, default theta1 ^ ... ^ thetan
//   connections        optional {"nabla": {...}, "A": {...}}
//   fiber_metric       optional hermitian matrix for A
//   pairing            optional {"weights": [w_T, w_A]}, default [1, -1]
//   alpha              number | "solve" (required with connections)
//   expect             optional {flag: bool}

#include <map>
#include <optional>
#include <string>

#include "stromcheck/hermitian.hpp"
#include "stromcheck/strominger.hpp"

namespace stromcheck::cli {

inline constexpr int kModelSchemaVersion = 1;

struct LoadedModel {
  std::string name;
  HermitianData h;
  std::optional<StromingerModel> strominger;
  std::map<std::string, bool> expectations;
};

// Throws ModelError with "<source>:<line>: <pointer>: ..." locations.
LoadedModel load_model(const std::string& text, const std::string& source = "<model>");
LoadedModel load_model_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace stromcheck::cli
