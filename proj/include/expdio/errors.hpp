#pragma once

#include <stdexcept>
#include <string>

namespace expdio {

// Base for every failure the toolkit reports. Callers that only need a
// message can catch this; sweeps catch the subclasses to quarantine work.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactorLimitExceeded : public Error {
 public:
  explicit FactorLimitExceeded(const std::string& what)
      : Error("factor limit exceeded: " + what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error("precision exhausted: " + what) {}
};

class ConditionFailed : public Error {
 public:
  explicit ConditionFailed(const std::string& what)
      : Error("condition failed: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

// Three-valued outcome used wherever work is bounded (factoring effort,
// precision budget).
enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace expdio
