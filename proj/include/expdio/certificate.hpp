#pragma once

#include <string>
#include <vector>

#include "expdio/errors.hpp"
#include "json.hpp"

namespace expdio {

using Json = nlohmann::json;

/// Serializable record of one verified claim. `inputs` and `parameters` are
/// enough to recompute `outputs` and `verdict`; replay() does exactly that.
struct Certificate {
  std::string claim;
  std::string module;
  Json inputs = Json::object();
  Json parameters = Json::object();
  Json outputs = Json::object();
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> assumptions;
  Json trace = Json::array();

  void step(const std::string& rule, Json detail = Json::object()) {
    trace.push_back(Json{{"rule", rule}, {"detail", std::move(detail)}});
  }
};

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

/// Structural validation against the shipped schema; returns the problems found.
std::vector<std::string> validate_certificate(const Json& j);

struct ReplayResult {
  bool ok = false;
  std::string message;
};

/// Recomputes the certificate from its inputs and parameters and compares
/// verdict and outputs.
ReplayResult replay(const Certificate& cert);

Verdict verdict_from_string(const std::string& s);

}  // namespace expdio
