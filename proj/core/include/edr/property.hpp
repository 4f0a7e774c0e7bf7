#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace edr {

/// Verdict of a predicate or check, with a payload that re-verifies under
/// plain ring arithmetic.
struct PropertyResult {
  std::string id;
  bool verdict = false;
  nlohmann::json witness;         // null when absent
  nlohmann::json counterexample;  // null when absent
  std::string note;

  nlohmann::json to_json() const;
};

}  // namespace edr
